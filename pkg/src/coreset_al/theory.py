"""Closed-form calculators for the covering-radius generalization bound and
the Lipschitz constants it needs.

The headline quantity bounds the core-set loss (the gap between the mean
loss over all points and the mean loss over the labeled subset) by a
coverage term proportional to the covering radius plus a sampling term that
shrinks as 1/sqrt(n):

    cover_radius * (loss_lipschitz + prob_lipschitz * loss_bound * num_classes)
        + sqrt(loss_bound**2 * log(1/gamma) / (2 * num_samples))

holding with probability at least 1 - gamma, under a zero-training-error
assumption that callers should check empirically (the harness reports the
measured training loss for exactly this reason).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_index_array, check_probability_rows


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the core-set loss bound.

    cover_radius     largest distance from any point to its nearest center
    loss_lipschitz   Lipschitz constant of the loss in the input, fixed label
    prob_lipschitz   Lipschitz constant of the class-probability functions
    loss_bound       upper bound on the loss values (sqrt(2) for l2-on-probabilities)
    num_classes      C
    num_samples      n, the dataset size
    gamma            failure probability; the bound holds w.p. >= 1 - gamma
    """

    cover_radius: float
    loss_lipschitz: float
    prob_lipschitz: float
    loss_bound: float
    num_classes: int
    num_samples: int
    gamma: float

    def __post_init__(self):
        for name in ("cover_radius", "loss_lipschitz", "prob_lipschitz", "loss_bound"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.num_samples < 1:
            raise ValueError("num_samples must be at least 1")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")


@dataclass(frozen=True)
class LipschitzSpec:
    """Shape summary of a layered network: the largest per-neuron sum of
    absolute incoming weights, and the layer counts it is raised to."""

    max_weight_sum: float
    num_conv_layers: int
    num_fc_layers: int
    num_classes: int

    def __post_init__(self):
        if self.max_weight_sum < 0:
            raise ValueError("max_weight_sum must be nonnegative")
        if self.num_conv_layers < 0 or self.num_fc_layers < 0:
            raise ValueError("layer counts must be nonnegative")


def softmax_jacobian_frobenius(p) -> float:
    """Frobenius norm of the softmax Jacobian evaluated at probabilities p.

    Closed form: sqrt(sum_{i != j} p_i^2 p_j^2 + sum_i p_i^2 (1 - p_i)^2).
    Zero at a one-hot vector, maximal at the uniform distribution.
    """
    p = check_probability_rows(p)[0]
    sq = p * p
    off_diag = float(sq.sum() ** 2 - np.sum(sq * sq))
    diag = float(np.sum(sq * (1.0 - p) ** 2))
    return math.sqrt(off_diag + diag)


def softmax_lipschitz_max(num_classes: int) -> float:
    """Softmax Jacobian Frobenius norm at the uniform distribution: sqrt(C - 1) / C.

    This is the symmetric critical point commonly quoted as the softmax
    Lipschitz constant, and the factor :func:`cnn_lipschitz_constant` uses.
    Note it is not a global maximum for C >= 3: probability vectors near a
    two-class edge of the simplex approach norm 1/2 (e.g. (0.5, 0.5, 0)
    attains exactly 0.5), which is the true supremum for every C.
    """
    C = int(num_classes)
    if C < 2:
        raise ValueError("num_classes must be at least 2")
    return math.sqrt(C - 1) / C


def cnn_lipschitz_constant(spec: LipschitzSpec) -> float:
    """Lipschitz constant of the l2-on-probabilities loss of a layered
    network: (sqrt(C - 1) / C) * max_weight_sum ** (total layer count)."""
    depth = spec.num_conv_layers + spec.num_fc_layers
    return softmax_lipschitz_max(spec.num_classes) * spec.max_weight_sum ** depth


def max_incoming_weight_sum(layers) -> float:
    """Max over layers and output neurons of the absolute incoming-weight sum.

    Layers are (n_in, n_out) matrices in the ``x @ W`` convention, so each
    column holds one neuron's incoming weights.
    """
    layers = list(layers)
    if not layers:
        raise ValueError("at least one layer is required")
    best = 0.0
    for W in layers:
        W = np.atleast_2d(np.asarray(W, dtype=np.float64))
        best = max(best, float(np.abs(W).sum(axis=0).max()))
    return best


def bound_terms(inputs: BoundInputs) -> tuple[float, float]:
    """The two summands of the bound: (coverage term, sampling term)."""
    coverage = inputs.cover_radius * (
        inputs.loss_lipschitz
        + inputs.prob_lipschitz * inputs.loss_bound * inputs.num_classes
    )
    sampling = math.sqrt(
        inputs.loss_bound ** 2 * math.log(1.0 / inputs.gamma) / (2.0 * inputs.num_samples)
    )
    return coverage, sampling


def coreset_loss_bound(inputs: BoundInputs) -> float:
    """Evaluate the covering-radius bound on the core-set loss."""
    coverage, sampling = bound_terms(inputs)
    return coverage + sampling


def coreset_loss(all_losses, subset) -> float:
    """|mean loss over every point - mean loss over the subset|."""
    values = np.asarray(getattr(all_losses, "values", all_losses), dtype=np.float64)
    subset = check_index_array(subset, values.size, "subset")
    return float(abs(values.mean() - values[subset].mean()))


def estimate_loss_lipschitz(X, losses, labels, num_pairs: int = 2000,
                            seed: int = 0) -> float:
    """Empirical lower bound on the loss Lipschitz constant.

    Samples pairs of same-label points and returns the largest observed
    |loss_i - loss_j| / ||x_i - x_j||. Being a sampled maximum this can
    only under-estimate the true constant; report it as such.
    """
    X = np.asarray(X, dtype=np.float64)
    values = np.asarray(getattr(losses, "values", losses), dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    rng = np.random.default_rng(seed)
    by_label = [np.flatnonzero(labels == c) for c in np.unique(labels)]
    groups = [g for g in by_label if g.size >= 2]
    if not groups:
        return 0.0
    best = 0.0
    for _ in range(int(num_pairs)):
        g = groups[int(rng.integers(len(groups)))]
        i, j = rng.choice(g, size=2, replace=False)
        dist = float(np.linalg.norm(X[i] - X[j]))
        if dist == 0.0:
            continue
        best = max(best, abs(float(values[i] - values[j])) / dist)
    return best
