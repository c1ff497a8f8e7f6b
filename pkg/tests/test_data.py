import struct

import numpy as np
import pytest

from coreset_al.data import (
    DatasetFormatError,
    generate_synthetic,
    load_dataset,
    save_dataset,
)
from coreset_al.geometry import FeatureSet


def sample_set(seed=0, labeled=True):
    rng = np.random.default_rng(seed)
    pts = rng.normal(scale=3.0, size=(17, 4))
    labels = rng.integers(0, 3, size=17) if labeled else None
    return FeatureSet(pts, labels, 3 if labeled else 0)


class TestBinaryFormat:
    def test_round_trip_bit_exact(self, tmp_path):
        fs = sample_set()
        path = tmp_path / "pool.bin"
        save_dataset(path, fs)
        back = load_dataset(path)
        assert np.array_equal(back.points.view(np.uint32), fs.points.view(np.uint32))
        assert np.array_equal(back.labels, fs.labels)
        assert back.num_classes == fs.num_classes
        save_dataset(tmp_path / "again.bin", back)
        assert (tmp_path / "again.bin").read_bytes() == path.read_bytes()

    def test_unlabeled_round_trip(self, tmp_path):
        fs = sample_set(labeled=False)
        path = tmp_path / "pool.bin"
        save_dataset(path, fs)
        back = load_dataset(path)
        assert not back.has_labels
        assert np.array_equal(back.points, fs.points)

    def test_magic_mismatch(self, tmp_path):
        path = tmp_path / "pool.bin"
        save_dataset(path, sample_set())
        blob = bytearray(path.read_bytes())
        blob[:4] = b"NOPE"
        path.write_bytes(bytes(blob))
        with pytest.raises(DatasetFormatError, match="magic"):
            load_dataset(path)

    def test_truncation(self, tmp_path):
        path = tmp_path / "pool.bin"
        save_dataset(path, sample_set())
        blob = path.read_bytes()
        path.write_bytes(blob[:-5])
        with pytest.raises(DatasetFormatError, match="truncated"):
            load_dataset(path)

    def test_trailing_garbage(self, tmp_path):
        path = tmp_path / "pool.bin"
        save_dataset(path, sample_set())
        path.write_bytes(path.read_bytes() + b"\x00")
        with pytest.raises(DatasetFormatError):
            load_dataset(path)

    def test_label_out_of_range(self, tmp_path):
        fs = sample_set()
        path = tmp_path / "pool.bin"
        save_dataset(path, fs)
        blob = bytearray(path.read_bytes())
        # rewrite num_classes to 1 so stored labels exceed it
        struct.pack_into("<I", blob, 16, 1)
        path.write_bytes(bytes(blob))
        with pytest.raises(DatasetFormatError, match="label"):
            load_dataset(path)

    def test_non_finite_feature(self, tmp_path):
        fs = sample_set(labeled=False)
        path = tmp_path / "pool.bin"
        save_dataset(path, fs)
        blob = bytearray(path.read_bytes())
        struct.pack_into("<f", blob, 24, float("inf"))
        path.write_bytes(bytes(blob))
        with pytest.raises(DatasetFormatError, match="finite"):
            load_dataset(path)

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "pool.bin"
        save_dataset(path, sample_set())
        blob = bytearray(path.read_bytes())
        struct.pack_into("<I", blob, 4, 9)
        path.write_bytes(bytes(blob))
        with pytest.raises(DatasetFormatError, match="version"):
            load_dataset(path)


class TestCsvFormat:
    def test_csv_and_binary_load_identically(self, tmp_path):
        fs = sample_set(seed=3)
        save_dataset(tmp_path / "pool.bin", fs)
        save_dataset(tmp_path / "pool.csv", fs)
        a = load_dataset(tmp_path / "pool.bin")
        b = load_dataset(tmp_path / "pool.csv")
        assert np.array_equal(a.points.view(np.uint32), b.points.view(np.uint32))
        assert np.array_equal(a.labels, b.labels)
        assert a.num_classes == b.num_classes

    def test_header_checked(self, tmp_path):
        path = tmp_path / "pool.csv"
        path.write_text("x,y,label\n1,2,0\n")
        with pytest.raises(DatasetFormatError, match="header"):
            load_dataset(path)

    def test_ragged_row(self, tmp_path):
        path = tmp_path / "pool.csv"
        path.write_text("f0,f1,label\n1.0,2.0,0\n1.0,2.0\n")
        with pytest.raises(DatasetFormatError, match="fields"):
            load_dataset(path)

    def test_unlabeled_csv(self, tmp_path):
        fs = sample_set(labeled=False)
        save_dataset(tmp_path / "pool.csv", fs)
        back = load_dataset(tmp_path / "pool.csv")
        assert not back.has_labels
        assert np.array_equal(back.points, fs.points)

    def test_negative_label_rejected(self, tmp_path):
        path = tmp_path / "pool.csv"
        path.write_text("f0,label\n1.0,0\n2.0,-1\n")
        with pytest.raises(DatasetFormatError, match="negative"):
            load_dataset(path)

    def test_non_numeric_feature_rejected(self, tmp_path):
        path = tmp_path / "pool.csv"
        path.write_text("f0,label\noops,0\n")
        with pytest.raises(DatasetFormatError):
            load_dataset(path)


class TestSynthetic:
    def test_counts_and_labels(self):
        fs = generate_synthetic(2, 5, 2, seed=0)
        assert fs.n == 10 and fs.dim == 2
        assert np.bincount(fs.labels, minlength=2).tolist() == [5, 5]

    def test_zero_spread_collapses_to_means(self):
        means = np.array([[1.0, 2.0], [-3.0, 0.5]])
        fs = generate_synthetic(2, 4, 2, spread=0.0, seed=1, means=means)
        for c in (0, 1):
            rows = fs.points[fs.labels == c]
            assert np.allclose(rows, means[c].astype(np.float32), atol=0)

    def test_sample_means_near_configured_means(self):
        per = 4000
        means = np.array([[0.0, 0.0], [8.0, -2.0]])
        spread = 1.5
        fs = generate_synthetic(2, per, 2, spread=spread, seed=2, means=means)
        for c in (0, 1):
            rows = fs.points[fs.labels == c]
            err = np.abs(rows.mean(axis=0) - means[c])
            assert np.all(err <= 4 * spread / np.sqrt(per))

    def test_deterministic(self):
        a = generate_synthetic(3, 10, 4, seed=5)
        b = generate_synthetic(3, 10, 4, seed=5)
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.labels, b.labels)

    def test_rejects_nonpositive_counts(self):
        with pytest.raises(ValueError):
            generate_synthetic(0, 5, 2)
        with pytest.raises(ValueError):
            generate_synthetic(2, 5, 0)
