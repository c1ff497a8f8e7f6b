"""Dataset I/O and synthetic pool generation.

The binary interchange format is deliberately minimal so round-trips are
bit-exact and testable without any array-library dependency:

    magic "CSAL" (4 bytes)
    format version   u32 = 1
    n, d, num_classes, has_labels   u32 each
    n*d little-endian float32 features, row-major
    n little-endian u32 labels (only when has_labels = 1)

No padding anywhere. CSV files use a header row ``f0,...,f{d-1}[,label]``
with shortest-round-trip float32 formatting, so the two formats load to
identical FeatureSets.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .geometry import FeatureSet

MAGIC = b"CSAL"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIIIII")


class DatasetFormatError(ValueError):
    """Raised when a dataset file does not match the expected format."""


def generate_synthetic(num_classes: int, per_class: int, dim: int,
                       spread: float = 1.0, seed: int = 0,
                       means: np.ndarray | None = None) -> FeatureSet:
    """Isotropic Gaussian mixture with one component per class.

    Class means default to standard-normal draws; pass `means` (shape
    (num_classes, dim)) to fix them. Rows are shuffled so class order does
    not correlate with file order. Deterministic per seed.
    """
    num_classes = int(num_classes)
    per_class = int(per_class)
    dim = int(dim)
    if num_classes < 1 or per_class < 1 or dim < 1:
        raise ValueError("num_classes, per_class, and dim must all be positive")
    if spread < 0:
        raise ValueError("spread must be nonnegative")
    rng = np.random.default_rng(seed)
    if means is None:
        means = rng.normal(size=(num_classes, dim))
    else:
        means = np.asarray(means, dtype=np.float64)
        if means.shape != (num_classes, dim):
            raise ValueError("means must have shape (num_classes, dim)")
    n = num_classes * per_class
    labels = np.repeat(np.arange(num_classes), per_class)
    points = means[labels] + spread * rng.normal(size=(n, dim))
    order = rng.permutation(n)
    return FeatureSet(points[order], labels[order], num_classes)


def save_dataset(path, features: FeatureSet) -> None:
    """Write a FeatureSet to `path`; CSV when the suffix is .csv, binary otherwise."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        _save_csv(path, features)
    else:
        _save_binary(path, features)


def load_dataset(path) -> FeatureSet:
    """Load a FeatureSet from `path`; CSV when the suffix is .csv, binary otherwise."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    return _load_binary(path)


def _save_binary(path: Path, fs: FeatureSet) -> None:
    has_labels = 1 if fs.has_labels else 0
    blob = bytearray()
    blob += _HEADER.pack(MAGIC, FORMAT_VERSION, fs.n, fs.dim, fs.num_classes, has_labels)
    blob += fs.points.astype("<f4", copy=False).tobytes(order="C")
    if has_labels:
        blob += fs.labels.astype("<u4").tobytes()
    path.write_bytes(bytes(blob))


def _load_binary(path: Path) -> FeatureSet:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise DatasetFormatError(f"{path}: truncated header")
    magic, version, n, d, num_classes, has_labels = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise DatasetFormatError(f"{path}: magic mismatch")
    if version != FORMAT_VERSION:
        raise DatasetFormatError(f"{path}: unsupported format version {version}")
    if has_labels not in (0, 1):
        raise DatasetFormatError(f"{path}: has_labels must be 0 or 1")
    if n < 1 or d < 1:
        raise DatasetFormatError(f"{path}: empty dataset (n={n}, d={d})")
    offset = _HEADER.size
    feat_bytes = 4 * n * d
    label_bytes = 4 * n * has_labels
    if len(blob) != offset + feat_bytes + label_bytes:
        raise DatasetFormatError(f"{path}: truncated or oversized payload")
    points = np.frombuffer(blob, dtype="<f4", count=n * d, offset=offset).reshape(n, d)
    if not np.isfinite(points).all():
        raise DatasetFormatError(f"{path}: non-finite feature value")
    labels = None
    if has_labels:
        labels = np.frombuffer(blob, dtype="<u4", count=n, offset=offset + feat_bytes)
        labels = labels.astype(np.int64)
        if labels.size and labels.max() >= num_classes:
            raise DatasetFormatError(f"{path}: label out of range for {num_classes} classes")
    return FeatureSet(points.copy(), labels, num_classes)


def _format_f32(v: np.float32) -> str:
    # str() of a float32 scalar is the shortest representation that parses
    # back to the same bits
    return str(np.float32(v))


def _save_csv(path: Path, fs: FeatureSet) -> None:
    cols = [f"f{k}" for k in range(fs.dim)]
    if fs.has_labels:
        cols.append("label")
    lines = [",".join(cols)]
    for i in range(fs.n):
        row = [_format_f32(v) for v in fs.points[i]]
        if fs.has_labels:
            row.append(str(int(fs.labels[i])))
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def _load_csv(path: Path) -> FeatureSet:
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DatasetFormatError(f"{path}: empty file")
    header = [c.strip() for c in lines[0].split(",")]
    has_labels = bool(header) and header[-1] == "label"
    dim = len(header) - (1 if has_labels else 0)
    if dim < 1 or header[:dim] != [f"f{k}" for k in range(dim)]:
        raise DatasetFormatError(f"{path}: unrecognized CSV header")
    points = np.empty((len(lines) - 1, dim), dtype=np.float32)
    labels = np.empty(len(lines) - 1, dtype=np.int64) if has_labels else None
    for r, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != len(header):
            raise DatasetFormatError(f"{path}: row {r + 1} has {len(parts)} fields")
        try:
            points[r] = [np.float32(float(p)) for p in parts[:dim]]
            if has_labels:
                labels[r] = int(parts[dim])
        except ValueError as exc:
            raise DatasetFormatError(f"{path}: row {r + 1}: {exc}") from exc
    if not np.isfinite(points).all():
        raise DatasetFormatError(f"{path}: non-finite feature value")
    if labels is not None and labels.size and labels.min() < 0:
        raise DatasetFormatError(f"{path}: negative label")
    return FeatureSet(points, labels, 0)
