import math

import numpy as np
import pytest

from ricci_pinch import (
    IsoparametricSpec,
    PinchingParams,
    ShapeOperatorSet,
    catalog_entry,
    catalog_labels,
    catalog_sweep,
    check_pinching,
    clifford_delta,
    clifford_torus,
    clifford_window,
    dupin_detect,
    fkm_pair,
    focal_entry,
    g4_minimal_tilt_closed_form,
    isoparametric,
    max_pinch_k,
    mean_curvature,
    minimal_isoparametric,
    pinch_bound,
    projective_entry,
    ricci_min,
)
from ricci_pinch.catalog import analytic_max_k, minimal_tilt


class TestCliffordTorus:
    def test_minimal_radius(self):
        for m in (2, 3, 4):
            n, p = 2 * m + 1, m
            entry = clifford_torus(n, p, math.sqrt(m / (2 * m + 1)))
            assert mean_curvature(entry.data).length < 1e-12

    def test_square_torus_equality(self):
        entry = clifford_torus(4, 2, math.sqrt(0.5))
        v = check_pinching(entry.data, 2)
        assert v.holds and not v.strict
        det = dupin_detect(entry.data, 2, restarts=40, seed=0)
        assert det.multiplicity == 2

    def test_window_interior(self):
        # 2/5 <= 0.41 <= 3/7 so the level-3 test holds (with equality)
        entry = clifford_torus(7, 3, math.sqrt(0.41))
        v = check_pinching(entry.data, 3)
        assert v.holds and not v.strict

    def test_window_arithmetic(self):
        assert clifford_window(7, 3) == (pytest.approx(0.4), pytest.approx(3 / 7))
        # swapped roles above the middle dimension
        assert clifford_window(6, 4) == (pytest.approx(4 / 6), pytest.approx(3 / 4))
        lo, hi = clifford_window(6, 3)
        assert lo == hi == pytest.approx(0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            clifford_torus(4, 1, 0.5)
        with pytest.raises(ValueError):
            clifford_torus(6, 2, 1.0)


class TestIsoparametric:
    def test_g2_matches_torus(self):
        # cot(theta), cot(theta + pi/2) = -tan(theta) reproduce the torus rates
        r = math.sqrt(0.3)
        s = math.sqrt(0.7)
        theta = math.atan2(r, s)  # cot(theta) = s/r
        spec = IsoparametricSpec(g=2, theta=theta, multiplicities=(2, 3))
        ops = isoparametric(spec)
        torus = clifford_torus(5, 2, r).data
        np.testing.assert_allclose(
            np.linalg.eigvalsh(ops.operators[0]),
            np.linalg.eigvalsh(torus.operators[0]),
            atol=1e-12,
        )

    def test_g3_cartan_spectrum(self):
        spec = IsoparametricSpec(g=3, theta=math.pi / 6, multiplicities=(4, 4, 4))
        diag = np.sort(np.diag(isoparametric(spec).operators[0]))
        expected = np.sort(
            np.concatenate([np.full(4, math.sqrt(3)), np.zeros(4), np.full(4, -math.sqrt(3))])
        )
        np.testing.assert_allclose(diag, expected, atol=1e-12)

    def test_g4_homogeneous_curvatures(self):
        lam1 = (3.0 + math.sqrt(5.0)) / 2.0
        theta = math.atan2(1.0, lam1)
        spec = IsoparametricSpec(g=4, theta=theta, multiplicities=(4, 5, 4, 5))
        values = spec.principal_curvatures()
        assert values[0] == pytest.approx(lam1, rel=1e-12)
        assert values[3] == pytest.approx(-math.sqrt(5.0), rel=1e-12)

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            IsoparametricSpec(g=5, theta=0.3, multiplicities=(1,) * 5)
        with pytest.raises(ValueError):
            IsoparametricSpec(g=4, theta=0.3, multiplicities=(1, 2, 3, 2))
        with pytest.raises(ValueError):
            IsoparametricSpec(g=3, theta=2.0, multiplicities=(1, 1, 1))


class TestMinimalIsoparametric:
    def test_g2_recovers_square_radius(self):
        theta, ops = minimal_isoparametric(2, (2, 4))
        # minimality at cot(theta) = sqrt((n-p)/p), i.e. r^2 = p/n
        torus = clifford_torus(6, 2, math.sqrt(2.0 / 6.0)).data
        np.testing.assert_allclose(
            np.sort(np.diag(ops.operators[0])),
            np.sort(np.diag(torus.operators[0])),
            atol=1e-10,
        )

    @pytest.mark.parametrize("m1,m2", [(4, 5), (4, 3), (4, 7), (4, 11), (6, 9), (4, 15)])
    def test_g4_closed_form(self, m1, m2):
        theta, ops = minimal_isoparametric(4, (m1, m2, m1, m2))
        assert 1.0 / math.tan(theta) == pytest.approx(
            g4_minimal_tilt_closed_form(m1, m2), abs=1e-10
        )
        assert abs(ops.traces()[0]) < 1e-10

    def test_g3_spectrum(self):
        _, ops = minimal_isoparametric(3, (4, 4, 4))
        diag = np.sort(np.diag(ops.operators[0]))
        expected = np.sort(
            np.concatenate([np.full(4, math.sqrt(3)), np.zeros(4), np.full(4, -math.sqrt(3))])
        )
        np.testing.assert_allclose(diag, expected, atol=1e-10)

    def test_all_minimal(self):
        for g, mult in [(2, (3, 5)), (3, (2, 2, 2)), (4, (2, 2, 2, 2)), (6, (1,) * 6)]:
            _, ops = minimal_isoparametric(g, mult)
            assert abs(ops.traces()[0]) < 1e-10

    def test_residual(self):
        theta = minimal_tilt(4, (4, 5, 4, 5))
        total = sum(
            m / math.tan(theta + i * math.pi / 4) for i, m in enumerate((4, 5, 4, 5))
        )
        assert abs(total) < 1e-12


class TestG4Identities:
    @pytest.mark.parametrize("m1,m2", [(4, 5), (4, 3), (6, 9), (2, 2)])
    def test_curvature_relations(self, m1, m2):
        theta = minimal_tilt(4, (m1, m2, m1, m2))
        spec = IsoparametricSpec(g=4, theta=theta, multiplicities=(m1, m2, m1, m2))
        l1, l2, l3, l4 = spec.principal_curvatures()
        assert l2 == pytest.approx((l1 - 1) / (l1 + 1), abs=1e-12)
        assert l3 == pytest.approx(-1.0 / l1, abs=1e-12)
        assert l4 == pytest.approx(-1.0 / l2, abs=1e-12)

    @pytest.mark.parametrize("m1,m2", [(4, 5), (4, 3), (4, 7), (4, 11), (6, 9), (4, 15)])
    def test_min_ricci_closed_form(self, m1, m2):
        theta, ops = minimal_isoparametric(4, (m1, m2, m1, m2))
        spec = IsoparametricSpec(g=4, theta=theta, multiplicities=(m1, m2, m1, m2))
        l1, _, _, l4 = spec.principal_curvatures()
        expected = 2 * (m1 + m2) - 1 - max(l1 * l1, l4 * l4)
        assert ricci_min(ops) == pytest.approx(expected, abs=1e-9)


class TestCliffordAlgebra:
    def test_delta_table(self):
        assert [clifford_delta(r) for r in range(1, 9)] == [1, 2, 4, 4, 8, 8, 8, 8]
        assert clifford_delta(9) == 16
        for r in range(1, 12):
            assert clifford_delta(r + 8) == 16 * clifford_delta(r)

    def test_fkm_pairs(self):
        assert fkm_pair(4, 2) == (4, 3)
        assert fkm_pair(4, 1) is None
        assert fkm_pair(4, 3) == (4, 7)
        # hypersurface dimension 2 s delta_r - 2
        m1, m2 = fkm_pair(4, 2)
        assert 2 * 2 * clifford_delta(4) - 2 == 2 * (m1 + m2) == 14

    def test_fkm_large_s_property(self):
        # for even r and s large, levels up to r/2 hold strictly
        for r, s in [(4, 31), (6, 21)]:
            m1, m2 = fkm_pair(r, s)
            assert s * clifford_delta(r) > 20 * (r + 2)
            _, ops = minimal_isoparametric(4, (m1, m2, m1, m2))
            best = max_pinch_k(ops)
            assert best is not None and best >= r // 2
            for k in range(2, r // 2 + 1):
                assert check_pinching(ops, k).strict


class TestFocalEntries:
    def test_2_3(self):
        entry = focal_entry(2, 3)
        assert (entry.dim, entry.ambient) == (8, 11)
        assert entry.expected_max_k == 2
        assert entry.expected_homology == ((0, "Z"), (3, "Z"), (5, "Z"), (8, "Z"))

    def test_6_9(self):
        entry = focal_entry(6, 9)
        assert (entry.dim, entry.ambient) == (24, 31)
        assert entry.expected_max_k == 3
        assert [d for d, _ in entry.expected_homology] == [0, 9, 15, 24]

    def test_4_5(self):
        entry = focal_entry(4, 5)
        assert (entry.dim, entry.ambient) == (14, 19)
        assert entry.expected_max_k == 2
        assert [d for d, _ in entry.expected_homology] == [0, 5, 9, 14]

    def test_analytic_level(self):
        entry = focal_entry(1, 3)
        assert analytic_max_k(entry.data) == 2 == entry.expected_max_k


class TestProjectiveEntries:
    def test_complex(self):
        for m in range(2, 7):
            entry = projective_entry("C", m)
            assert entry.dim == 2 * m
            assert entry.data.ricci_min == pytest.approx(
                pinch_bound(PinchingParams(2 * m, 2, 0.0))
            )
            assert entry.expected_max_k == 2 and entry.expected_equality

    def test_quaternionic(self):
        entry = projective_entry("H", 2)
        assert entry.dim == 8
        assert entry.data.ricci_min == pytest.approx(16.0 / 3.0)
        assert entry.expected_max_k == 3 and entry.expected_equality
        for m in (3, 4):
            entry = projective_entry("H", m)
            assert entry.expected_max_k == 2 and not entry.expected_equality

    def test_octonion(self):
        entry = projective_entry("O", 2)
        assert entry.dim == 16 and entry.data.ricci_min == pytest.approx(12.0)
        assert entry.expected_max_k == 4 and entry.expected_equality
        assert [d for d, _ in entry.expected_homology] == [0, 8, 16]

    def test_validation(self):
        with pytest.raises(ValueError):
            projective_entry("C", 1)
        with pytest.raises(ValueError):
            projective_entry("O", 3)
        with pytest.raises(ValueError):
            projective_entry("R", 2)


class TestSweep:
    def test_all_entries_consistent(self):
        results = catalog_sweep()
        bad = [m for r in results for m in r.mismatches]
        assert not bad, bad

    def test_labels_resolve(self):
        for label in catalog_labels():
            entry = catalog_entry(label)
            assert entry.label == label

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            catalog_entry("nope")

    def test_window_sweep_small(self):
        # level-p verdict flips exactly at the window endpoints
        n, p = 7, 3
        lo, hi = clifford_window(n, p)
        for t in np.linspace(0.05, 0.95, 60):
            if min(abs(t - lo), abs(t - hi)) < 1e-6:
                continue
            v = check_pinching(clifford_torus(n, p, math.sqrt(t)).data, p)
            assert v.holds == (lo <= t <= hi)
        for t in (lo, hi):
            v = check_pinching(clifford_torus(n, p, math.sqrt(t)).data, p)
            assert v.holds and not v.strict
