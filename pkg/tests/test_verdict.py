import math

import numpy as np
import pytest

from ricci_pinch import (
    PinchingParams,
    ShapeOperatorSet,
    SubspaceFrame,
    catalog_entry,
    check_pinching,
    dupin_detect,
    dupin_detect_all,
    equality_frame_excess,
    expected_excess,
    ls_max,
    max_pinch_k,
    multiplicity_window_check,
    pinch_scalars,
    ricci_direction,
)


class TestCheckPinching:
    def test_cartan_equality(self, cartan12):
        v = check_pinching(cartan12, 3)
        assert v.holds and not v.strict
        # equality directions span both extreme eigenspaces
        assert v.equality_directions.shape[1] == 8
        for i in range(v.equality_directions.shape[1]):
            x = v.equality_directions[:, i]
            assert ricci_direction(cartan12, x) == pytest.approx(v.bound, abs=1e-9)

    def test_homogeneous_strict(self):
        ops = catalog_entry("g4-minimal-4-5").data
        v = check_pinching(ops, 2)
        assert v.holds and v.strict
        assert v.equality_directions.shape[1] == 0

    def test_cartan_fails_at_four(self, cartan12):
        # k = 4 is a valid level for n = 12 but the bound 9 exceeds min Ric 8
        v = check_pinching(cartan12, 4)
        assert not v.holds
        assert v.bound == pytest.approx(9.0, abs=1e-12)

    def test_invalid_level(self, cartan12):
        with pytest.raises(ValueError):
            check_pinching(cartan12, 7)

    def test_strict_implies_holds(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            raw = rng.standard_normal((1, 6, 6)) * 0.3
            ops = ShapeOperatorSet(0.5 * (raw + np.swapaxes(raw, 1, 2)))
            v = check_pinching(ops, 2)
            assert not v.strict or v.holds


class TestMaxPinchK:
    def test_catalog_values(self, cartan12, cartan24):
        assert max_pinch_k(cartan12) == 3
        assert max_pinch_k(cartan24) == 6

    def test_totally_geodesic(self):
        ops = ShapeOperatorSet(np.zeros((1, 8, 8)))
        # Ric = 7 meets the level-4 bound 6
        assert max_pinch_k(ops) == 4

    def test_none_when_hopeless(self):
        ops = ShapeOperatorSet(np.diag([5.0, -5.0, 0.0, 0.0])[None])
        assert max_pinch_k(ops) is None


class TestDupinDetect:
    def test_cartan(self, cartan12):
        det = dupin_detect(cartan12, 3, restarts=40, seed=0)
        assert det is not None and not det.weak
        assert det.norm == pytest.approx(math.sqrt(3.0), abs=1e-9)
        assert det.multiplicity == 4
        # both signs of the extreme eigenvalue produce candidates
        alls = dupin_detect_all(cartan12, 3, restarts=40, seed=0)
        strong = [d for d in alls if not d.weak]
        signs = sorted(np.sign(d.normal[0]) for d in strong)
        assert signs == [-1.0, 1.0]

    def test_torus(self, torus4):
        det = dupin_detect(torus4, 2, restarts=60, seed=0)
        assert det is not None and not det.weak
        assert det.norm == pytest.approx(1.0, abs=1e-9)
        assert det.multiplicity == 2  # the n/2 case

    def test_strict_entry_gives_none(self):
        ops = catalog_entry("g4-minimal-4-5").data
        assert dupin_detect(ops, 2, restarts=15, seed=0) is None

    def test_ricci_equals_bound_on_eigenspace(self, cartan12, torus4):
        for ops, k in [(cartan12, 3), (torus4, 2)]:
            det = dupin_detect(ops, k, restarts=40, seed=0)
            v = check_pinching(ops, k)
            for i in range(det.multiplicity):
                x = det.basis[:, i]
                assert ricci_direction(ops, x) == pytest.approx(v.bound, abs=1e-9)

    def test_umbilic_relation_random_arguments(self, cartan12):
        det = dupin_detect(cartan12, 3, restarts=40, seed=0)
        rng = np.random.default_rng(9)
        for _ in range(1000):
            x = det.basis @ rng.standard_normal(det.multiplicity)
            x /= np.linalg.norm(x)
            y = rng.standard_normal(12)
            # alpha(x, y) has normal coordinates <A_a x, y>
            alpha = np.array([x @ cartan12.operators[a] @ y for a in range(cartan12.m)])
            expected = float(x @ y) * det.normal
            assert np.linalg.norm(alpha - expected) < 1e-8

    def test_collinear_with_mean_at_window_edge(self):
        from ricci_pinch import clifford_torus

        # lower window endpoint: nonminimal torus with equality at k = p
        entry = clifford_torus(7, 3, math.sqrt(2.0 / 5.0))
        det = dupin_detect(entry.data, 3, restarts=40, seed=0)
        assert det is not None
        assert det.collinear_with_mean
        sc = pinch_scalars(PinchingParams(7, 3, _mean_len(entry.data)))
        assert det.norm == pytest.approx(sc.shape_upper, abs=1e-9)


def _mean_len(ops):
    from ricci_pinch import mean_curvature

    return mean_curvature(ops).length


class TestMultiplicityWindow:
    def test_examples(self):
        assert multiplicity_window_check(12, 3, 4)
        assert multiplicity_window_check(4, 2, 2)
        assert not multiplicity_window_check(12, 3, 9)

    def test_validation(self):
        with pytest.raises(ValueError):
            multiplicity_window_check(12, 7, 4)
        with pytest.raises(ValueError):
            multiplicity_window_check(12, 3, 1)


class TestEqualityFrameExcess:
    @staticmethod
    def synthetic(n, k, h):
        """One shape operator diag(a I_k, lam I_{n-k}) with trace nH and the
        complement an exact umbilic eigenspace at the upper root."""
        lam = pinch_scalars(PinchingParams(n, k, h)).shape_upper
        a = (n * h - (n - k) * lam) / k
        diag = np.concatenate([np.full(k, a), np.full(n - k, lam)])
        return ShapeOperatorSet(np.diag(diag)[None]), lam

    def test_matches_closed_form(self):
        for n, k, h in [(8, 2, 0.0), (8, 2, 0.5), (9, 3, 0.7), (12, 4, 1.1), (10, 3, 0.0)]:
            ops, lam = self.synthetic(n, k, h)
            v = SubspaceFrame(np.eye(n)[:, :k])
            excess = equality_frame_excess(ops, v, normal=np.array([lam]))
            assert excess == pytest.approx(expected_excess(n, k, h), rel=1e-9)
            assert excess > 0  # k < n/2 throughout

    def test_zero_at_top_level(self):
        for n, h in [(8, 0.0), (8, 0.9), (10, 0.4)]:
            ops, lam = self.synthetic(n, n // 2, h)
            v = SubspaceFrame(np.eye(n)[:, : n // 2])
            assert equality_frame_excess(ops, v) == pytest.approx(0.0, abs=1e-10)

    def test_torus_second_factor(self, torus4):
        v = SubspaceFrame(np.eye(4)[:, 2:])
        assert equality_frame_excess(torus4, v, normal=np.array([1.0])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_dimension_mismatch(self, torus4):
        with pytest.raises(ValueError, match="mismatch"):
            equality_frame_excess(torus4, SubspaceFrame(np.eye(6)[:, :2]))

    def test_rejects_nonumbilic_complement(self, cartan12):
        v = SubspaceFrame(np.eye(12)[:, :3])
        with pytest.raises(ValueError, match="umbilic"):
            equality_frame_excess(cartan12, v, normal=np.array([math.sqrt(3.0)]))


class TestStrictnessPropagation:
    def test_strict_forces_below(self):
        for label in ("g4-minimal-4-5", "g4-minimal-6-9"):
            ops = catalog_entry(label).data
            k = max_pinch_k(ops)
            assert check_pinching(ops, k).strict
            res = ls_max(ops, k, restarts=40, seed=0)
            assert res.classification == "below"
