import math

import numpy as np
import pytest

from ricci_pinch import (
    ShapeOperatorSet,
    SubspaceFrame,
    equality_subspaces,
    ls_max,
    ls_oracle,
    ls_value,
    ls_value_by_completion,
    principal_angle_max,
)
from conftest import random_operator_set


def coordinate_frame(n, cols):
    return SubspaceFrame(np.eye(n)[:, list(cols)])


class TestLSValue:
    def test_totally_geodesic(self):
        ops = ShapeOperatorSet(np.zeros((2, 5, 5)))
        assert ls_value(ops, coordinate_frame(5, [0, 1])) == pytest.approx(0.0, abs=1e-14)

    def test_torus_factor_plane(self, torus4):
        # cross terms vanish, -sum alpha_ii alpha_jj = 4 = p(n-p)
        assert ls_value(torus4, coordinate_frame(4, [0, 1])) == pytest.approx(4.0, abs=1e-12)

    def test_cartan_eigen_plane(self, cartan12):
        # 3-plane inside the sqrt(3)-eigenspace: value (3 sqrt 3)^2 = 27
        assert ls_value(cartan12, coordinate_frame(12, [0, 1, 2])) == pytest.approx(
            27.0, abs=1e-10
        )

    def test_dimension_mismatch(self, torus4):
        with pytest.raises(ValueError, match="mismatch"):
            ls_value(torus4, coordinate_frame(5, [0, 1]))

    def test_rotation_invariance_within_plane(self):
        rng = np.random.default_rng(31)
        ops = random_operator_set(rng, n=7, m=2)
        base, _ = np.linalg.qr(rng.standard_normal((7, 3)))
        ref = ls_value(ops, SubspaceFrame(base))
        for _ in range(1000):
            rot, _ = np.linalg.qr(rng.standard_normal((3, 3)))
            rotated = SubspaceFrame(base @ rot)
            assert abs(ls_value(ops, rotated) - ref) < 1e-10 * (1 + abs(ref))

    def test_completion_agreement(self):
        rng = np.random.default_rng(37)
        for _ in range(60):
            ops = random_operator_set(rng)
            p = int(rng.integers(1, ops.n))
            basis, _ = np.linalg.qr(rng.standard_normal((ops.n, p)))
            frame = SubspaceFrame(basis)
            a = ls_value(ops, frame)
            b = ls_value_by_completion(ops, frame)
            assert abs(a - b) < 1e-10 * (1 + abs(a))


class TestLSMax:
    def test_totally_geodesic(self):
        ops = ShapeOperatorSet(np.zeros((1, 6, 6)))
        res = ls_max(ops, 2, restarts=20, seed=0)
        assert res.value == pytest.approx(0.0, abs=1e-12)
        assert res.classification == "below"

    def test_torus_equality(self, torus4):
        res = ls_max(torus4, 2, restarts=60, seed=0)
        assert res.classification == "equality"
        assert res.value == pytest.approx(4.0, abs=1e-9)
        # brute force never exceeds the ceiling
        assert ls_oracle(torus4, 2, samples=100000, seed=1) <= 4.0 + 1e-9

    def test_cartan_below_at_p2(self, cartan12):
        res = ls_max(cartan12, 2, restarts=60, seed=0)
        assert res.classification == "below"
        assert res.value < 20.0 - 1e-6

    def test_invalid_p(self, torus4):
        with pytest.raises(ValueError):
            ls_max(torus4, 0)
        with pytest.raises(ValueError):
            ls_max(torus4, 4)

    def test_deterministic(self, cartan12):
        a = ls_max(cartan12, 3, restarts=25, seed=42)
        b = ls_max(cartan12, 3, restarts=25, seed=42)
        assert a.value == b.value
        np.testing.assert_array_equal(a.maximizer.basis, b.maximizer.basis)


class TestOracle:
    def test_totally_geodesic(self):
        ops = ShapeOperatorSet(np.zeros((1, 5, 5)))
        assert ls_oracle(ops, 2, samples=500) == pytest.approx(0.0, abs=1e-12)

    def test_torus_attains(self, torus4):
        assert ls_oracle(torus4, 2, samples=10000, seed=3) == pytest.approx(4.0, abs=1e-6)

    def test_cartan_attains(self, cartan12):
        assert ls_oracle(cartan12, 3, samples=2000, seed=3) == pytest.approx(27.0, abs=1e-6)

    def test_dominance(self, cartan12, torus4):
        rng = np.random.default_rng(41)
        cases = [(cartan12, 3), (torus4, 2)]
        for _ in range(4):
            cases.append((random_operator_set(rng, n=6, m=2, scale=0.7), int(rng.integers(1, 6))))
        for ops, p in cases:
            assert ls_max(ops, p, restarts=40, seed=0) .value >= ls_oracle(
                ops, p, samples=4000, seed=5
            ) - 1e-8


class TestEqualitySubspaces:
    def test_totally_geodesic_empty(self):
        ops = ShapeOperatorSet(np.zeros((1, 6, 6)))
        assert equality_subspaces(ops, 2, restarts=20, seed=0) == []

    def test_cartan_planes_in_eigenspaces(self, cartan12):
        frames = equality_subspaces(cartan12, 3, restarts=40, seed=0)
        assert frames
        plus = np.eye(12)[:, 0:4]
        minus = np.eye(12)[:, 8:12]
        for frame in frames:
            angles = [principal_angle_max(plus, frame.basis), principal_angle_max(minus, frame.basis)]
            assert min(angles) < 1e-6
            assert frame.label == "eigenspace-contained"

    def test_torus_contains_both_factors(self, torus4):
        frames = equality_subspaces(torus4, 2, restarts=60, seed=0)
        first = np.eye(4)[:, :2]
        second = np.eye(4)[:, 2:]
        found_first = any(principal_angle_max(first, f.basis) < 1e-6 for f in frames)
        found_second = any(principal_angle_max(second, f.basis) < 1e-6 for f in frames)
        assert found_first and found_second
