"""Reference learner: multinomial softmax regression trained by full-batch
gradient descent on cross-entropy with l2 weight decay.

A deliberately small, deterministic stand-in for a deep model: it provides
the probabilities, per-point losses, and accuracies the simulation harness
and the uncertainty baselines need, while keeping every experiment exactly
reproducible.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_feature_matrix

CROSS_ENTROPY = "cross_entropy"
L2_ON_PROBABILITIES = "l2"

#: Largest possible l2 distance between two probability vectors.
L2_LOSS_BOUND = math.sqrt(2.0)

_LOG_CLAMP = 1e-12


@dataclass
class LossVector:
    """Per-point loss values of one kind, with the kind's attainable bound."""

    values: np.ndarray
    kind: str
    bound: float

    def mean(self) -> float:
        return float(self.values.mean())


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max-subtraction for overflow safety."""
    z = logits - logits.max(axis=1, keepdims=True)
    np.exp(z, out=z)
    z /= z.sum(axis=1, keepdims=True)
    return z


def one_hot(y: np.ndarray, num_classes: int) -> np.ndarray:
    out = np.zeros((y.size, num_classes))
    out[np.arange(y.size), y] = 1.0
    return out


class SoftmaxClassifier(BaseEstimator, ClassifierMixin):
    """Multinomial logistic regression, full batch, zero-initialized.

    Deterministic for fixed inputs: weights start at zero and every epoch
    applies one full-batch gradient step, so two fits on the same data give
    bit-identical parameters. With ``epochs=0`` the model predicts the
    uniform distribution over classes.

    Parameters
    ----------
    learning_rate : float
    epochs : int
    l2_penalty : float
        Coefficient of the (l2/2)*||W||^2 weight-decay term; the bias is
        not penalized.
    num_classes : int or None
        Fixed class count; inferred from the labels when None. Passing it
        explicitly keeps the probability dimension stable when early
        labeled pools miss classes.
    seed : int
        Recorded with the hyperparameters; training itself is
        deterministic and does not consume randomness.
    """

    def __init__(self, learning_rate=0.1, epochs=500, l2_penalty=1e-4,
                 num_classes=None, seed=0):
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.l2_penalty = l2_penalty
        self.num_classes = num_classes
        self.seed = seed

    def _validate(self, X, y):
        X = as_feature_matrix(X)
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (X.shape[0],):
            raise ValueError("labels must be a 1-D array matching X")
        if y.size == 0:
            raise ValueError("cannot fit on an empty labeled set")
        if y.min() < 0:
            raise ValueError("labels must be nonnegative")
        return X, y

    def fit(self, X, y):
        X, y = self._validate(X, y)
        C = int(self.num_classes) if self.num_classes else int(y.max()) + 1
        if y.max() >= C:
            raise ValueError("label out of range for num_classes")
        if X.shape[0] < C:
            warnings.warn(f"fitting on {X.shape[0]} points for {C} classes",
                          stacklevel=2)
        n, d = X.shape
        W = np.zeros((C, d))
        b = np.zeros(C)
        lr = float(self.learning_rate)
        for _ in range(int(self.epochs)):
            gW, gb = self._gradients(W, b, X, y)
            W -= lr * gW
            b -= lr * gb
        self.coef_ = W
        self.intercept_ = b
        self.classes_ = np.arange(C)
        self.n_features_in_ = d
        return self

    def _gradients(self, W, b, X, y):
        P = softmax(X @ W.T + b)
        G = (P - one_hot(y, W.shape[0])) / X.shape[0]
        return G.T @ X + float(self.l2_penalty) * W, G.sum(axis=0)

    def objective(self, X, y) -> float:
        """Training objective: mean cross-entropy plus (l2/2)*||W||^2."""
        check_is_fitted(self, "coef_")
        X, y = self._validate(X, y)
        P = self.predict_proba(X)
        ce = -np.log(np.maximum(P[np.arange(y.size), y], _LOG_CLAMP))
        return float(ce.mean() + 0.5 * float(self.l2_penalty) * np.sum(self.coef_ ** 2))

    def gradients(self, X, y):
        """Analytic gradient of :meth:`objective` at the fitted parameters."""
        check_is_fitted(self, "coef_")
        X, y = self._validate(X, y)
        return self._gradients(self.coef_, self.intercept_, X, y)

    def decision_function(self, X) -> np.ndarray:
        check_is_fitted(self, "coef_")
        X = as_feature_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError("feature dimension does not match the fitted model")
        return X @ self.coef_.T + self.intercept_

    def predict_proba(self, X) -> np.ndarray:
        return softmax(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        # argmax takes the smallest class index on ties
        return np.argmax(self.predict_proba(X), axis=1)

    def point_losses(self, X, y, kind: str = L2_ON_PROBABILITIES) -> LossVector:
        """Per-point losses against the true labels.

        ``kind="l2"`` gives the l2 distance between the predicted
        probabilities and the one-hot target (bounded by sqrt(2));
        ``kind="cross_entropy"`` gives -log p_y with the probability
        clamped below at 1e-12.
        """
        check_is_fitted(self, "coef_")
        X = as_feature_matrix(X)
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (X.shape[0],):
            raise ValueError("labels are required to compute point losses")
        P = self.predict_proba(X)
        if kind == L2_ON_PROBABILITIES:
            diff = P - one_hot(y, P.shape[1])
            values = np.sqrt(np.sum(diff * diff, axis=1))
            return LossVector(values, kind, L2_LOSS_BOUND)
        if kind == CROSS_ENTROPY:
            values = -np.log(np.maximum(P[np.arange(y.size), y], _LOG_CLAMP))
            return LossVector(values, kind, -math.log(_LOG_CLAMP))
        raise ValueError(f"unknown loss kind: {kind!r}")

    def accuracy(self, X, y) -> float:
        """Fraction of points whose predicted class matches the label."""
        y = np.asarray(y, dtype=np.int64)
        return float(np.mean(self.predict(X) == y))
