"""Catalog of classical spherical submanifolds with known pinching behavior.

Matrix-backed entries (isoparametric hypersurfaces and products of spheres)
carry explicit shape operators; focal submanifolds and projective-space
embeddings carry analytic Ricci data instead, since only their curvature
constants are needed.  Every entry stores the expected outcome of the
pinching test so the whole catalog doubles as a regression suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import (
    MEAN_ZERO_TOL,
    PinchingParams,
    ShapeOperatorSet,
    equality_tol,
    pinch_bound,
)
from .verdict import check_pinching, max_pinch_k

VALID_G = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class IsoparametricSpec:
    """Constant-principal-curvature hypersurface data: g distinct curvatures
    cot(theta + (i-1) pi / g) with multiplicities m_i satisfying m_i = m_{i+2}."""

    g: int
    theta: float
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if self.g not in VALID_G:
            raise ValueError(f"g must be one of {VALID_G}, got {self.g}")
        if not 0.0 < self.theta < math.pi / self.g:
            raise ValueError(f"theta must lie in (0, pi/g), got {self.theta}")
        mult = tuple(int(m) for m in self.multiplicities)
        if len(mult) != self.g or any(m < 1 for m in mult):
            raise ValueError("multiplicities must be g positive integers")
        for i in range(self.g):
            if mult[i] != mult[(i + 2) % self.g]:
                raise ValueError("multiplicities must satisfy m_i = m_{i+2}")
        object.__setattr__(self, "multiplicities", mult)

    def principal_curvatures(self) -> np.ndarray:
        angles = self.theta + np.arange(self.g) * math.pi / self.g
        values = 1.0 / np.tan(angles)
        if not np.all(np.diff(values) < 0):
            raise ValueError("principal curvatures are not strictly decreasing")
        return values

    @property
    def dim(self) -> int:
        return sum(self.multiplicities)


@dataclass(frozen=True)
class AnalyticDescriptor:
    """Closed-form curvature data for entries without explicit operators.

    ``attained`` distinguishes an exact minimum Ricci value from a strict
    open lower bound.
    """

    n: int
    ricci_min: float
    H: float = 0.0
    attained: bool = True

    def __post_init__(self):
        if not self.ricci_min > 0:
            raise ValueError("stored analytic entries must have positive Ricci")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    dim: int
    ambient: int
    data: ShapeOperatorSet | AnalyticDescriptor
    expected_max_k: int | None = None
    expected_equality: bool | None = None
    expected_homology: tuple[tuple[int, str], ...] | None = None
    notes: tuple[str, ...] = ()


def isoparametric(spec: IsoparametricSpec) -> ShapeOperatorSet:
    """Single shape operator with the spec's block-diagonal spectrum."""
    values = spec.principal_curvatures()
    diag = np.concatenate(
        [np.full(m, v) for v, m in zip(values, spec.multiplicities)]
    )
    s = ShapeOperatorSet(np.diag(diag)[None, :, :])
    return s.align() if abs(diag.sum()) > MEAN_ZERO_TOL else s


def minimal_tilt(g: int, multiplicities) -> float:
    """Angle theta at which the isoparametric hypersurface is minimal.

    Solves sum_i m_i cot(theta + (i-1) pi/g) = 0 by bisection; the trace is
    strictly decreasing on (0, pi/g) so the root is unique.
    """
    mult = tuple(int(m) for m in multiplicities)

    def trace(theta: float) -> float:
        return sum(
            m / math.tan(theta + i * math.pi / g) for i, m in enumerate(mult)
        )

    lo, hi = 1e-12, math.pi / g - 1e-12
    if not (trace(lo) > 0 > trace(hi)):
        raise ValueError("no minimal angle for this multiplicity data")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if trace(mid) > 0:
            lo = mid
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    if abs(trace(theta)) > 1e-12:
        raise ValueError("bisection failed to reach the minimality residual")
    return theta


def minimal_isoparametric(g: int, multiplicities) -> tuple[float, ShapeOperatorSet]:
    """The unique minimal hypersurface in the parallel isoparametric family."""
    theta = minimal_tilt(g, multiplicities)
    spec = IsoparametricSpec(g=g, theta=theta, multiplicities=tuple(multiplicities))
    return theta, isoparametric(spec)


def g4_minimal_tilt_closed_form(m1: int, m2: int) -> float:
    """cot(theta) of the minimal g = 4 hypersurface: sqrt(m2/m1) + sqrt(1 + m2/m1)."""
    ratio = m2 / m1
    return math.sqrt(ratio) + math.sqrt(1.0 + ratio)


def clifford_delta(r: int) -> int:
    """Dimension of the irreducible real module of the Clifford algebra on
    r - 1 generators: 1, 2, 4, 4, 8, 8, 8, 8, then delta_{r+8} = 16 delta_r."""
    if r < 1 or int(r) != r:
        raise ValueError(f"r must be a positive integer, got {r}")
    table = (1, 2, 4, 4, 8, 8, 8, 8)
    q, rem = divmod(r - 1, 8)
    return table[rem] * 16**q


def fkm_pair(r: int, s: int) -> tuple[int, int] | None:
    """Multiplicity pair (r, s*delta_r - r - 1) of a Clifford-system family,
    or None when the second entry fails to be positive."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive integers")
    m2 = s * clifford_delta(r) - r - 1
    return (r, m2) if m2 > 0 else None


def clifford_window(n: int, p: int) -> tuple[float, float]:
    """Closed r^2-window on which the product of spheres S^p(r) x S^{n-p}
    meets the pinching threshold at its natural level min(p, n-p).

    The endpoints are (p-1)/(n-2) and p/n; their roles swap when p > n/2
    (equivalently, swap the factors)."""
    lo, hi = (p - 1) / (n - 2), p / n
    if 2 * p > n:
        lo, hi = hi, lo
    return lo, hi


def clifford_torus(n: int, p: int, r: float) -> CatalogEntry:
    """Product of spheres S^p(r) x S^{n-p}(sqrt(1-r^2)) in the (n+1)-sphere."""
    if not 2 <= p <= n - 2:
        raise ValueError(f"p must satisfy 2 <= p <= n-2, got p={p}, n={n}")
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    s = math.sqrt(1.0 - r * r)
    diag = np.concatenate([np.full(p, s / r), np.full(n - p, -r / s)])
    ops = ShapeOperatorSet(np.diag(diag)[None, :, :], label=f"clifford-{n}-{p}")
    ops = ops.align() if abs(diag.sum()) > MEAN_ZERO_TOL else ops
    k_nat = min(p, n - p)
    lo, hi = clifford_window(n, p)
    t = r * r
    in_window = lo - 1e-12 <= t <= hi + 1e-12
    return CatalogEntry(
        label=f"clifford-torus-{n}-{p}",
        dim=n,
        ambient=n + 1,
        data=ops,
        expected_max_k=k_nat if in_window else None,
        expected_equality=True if in_window else None,
    )


def focal_entry(m1: int, m2: int) -> CatalogEntry:
    """Focal submanifold of a g = 4 family: dimension m1 + 2*m2, minimal,
    per-normal spectrum {0^(m1), (+1)^(m2), (-1)^(m2)}, Ricci > 2(m2 - 1).

    The stored Ricci value is the open lower bound (not attained), so every
    verdict derived from it is strict.
    """
    if m1 < 1 or m2 < 2:
        raise ValueError("focal entries need m1 >= 1 and m2 >= 2")
    n = m1 + 2 * m2
    homology = tuple((i, "Z") for i in (0, m2, m1 + m2, n))
    return CatalogEntry(
        label=f"focal-{m1}-{m2}",
        dim=n,
        ambient=2 * (m1 + m2) + 1,
        data=AnalyticDescriptor(n=n, ricci_min=2.0 * (m2 - 1), H=0.0, attained=False),
        expected_max_k=(m1 + 2 * m2) // (m1 + 2),
        expected_equality=False,
        expected_homology=homology,
        notes=("ricci value is an open lower bound",),
    )


def projective_entry(family: str, m: int) -> CatalogEntry:
    """Minimal embedding of a projective space: complex (Ric = m on dim 2m),
    quaternionic (Ric = 2m(m+2)/(m+1) on dim 4m) or the 16-dimensional octonion
    plane (Ric = 12)."""
    if family == "C":
        if m < 2:
            raise ValueError("complex projective entries need m >= 2")
        n, ric, ambient = 2 * m, float(m), m * m + 2 * m - 1
        max_k, equality = 2, True
        degrees = range(0, n + 1, 2)
    elif family == "H":
        if m < 2:
            raise ValueError("quaternionic projective entries need m >= 2")
        n, ric, ambient = 4 * m, 2.0 * m * (m + 2) / (m + 1), 2 * m * m + 3 * m - 1
        max_k, equality = (3, True) if m == 2 else (2, False)
        degrees = range(0, n + 1, 4)
    elif family == "O":
        if m != 2:
            raise ValueError("the octonion plane exists only for m = 2")
        n, ric, ambient = 16, 12.0, 25
        max_k, equality = 4, True
        degrees = range(0, n + 1, 8)
    else:
        raise ValueError(f"family must be 'C', 'H' or 'O', got {family!r}")
    return CatalogEntry(
        label=f"proj-{family}-{m}",
        dim=n,
        ambient=ambient,
        data=AnalyticDescriptor(n=n, ricci_min=ric, H=0.0, attained=True),
        expected_max_k=max_k,
        expected_equality=equality,
        expected_homology=tuple((i, "Z") for i in degrees),
    )


def _cartan_entry(dim: int) -> CatalogEntry:
    mult = dim // 3
    _, ops = minimal_isoparametric(3, (mult, mult, mult))
    return CatalogEntry(
        label=f"cartan-{dim}",
        dim=dim,
        ambient=dim + 1,
        data=ops,
        expected_max_k=dim // 4,
        expected_equality=True,
    )


# Computed verdicts for the minimal g = 4 hypersurfaces.  For (4, 3) no level
# works (min Ric = 13 - lambda_max^2 < 7 = b(14, 2, 0)), and for (4, 11) the
# largest working level is 2; see the per-entry notes.
_G4_TABLE = {
    (4, 5): (2, "homogeneous, not of Clifford-system type"),
    (4, 3): (None, "largest principal curvature pushes min Ric below b(n, 2, 0)"),
    (4, 7): (2, ""),
    (4, 11): (2, ""),
    (6, 9): (3, ""),
    (4, 15): (2, ""),
}


def _g4_minimal_entry(m1: int, m2: int) -> CatalogEntry:
    _, ops = minimal_isoparametric(4, (m1, m2, m1, m2))
    n = 2 * (m1 + m2)
    max_k, note = _G4_TABLE[(m1, m2)]
    return CatalogEntry(
        label=f"g4-minimal-{m1}-{m2}",
        dim=n,
        ambient=n + 1,
        data=ops,
        expected_max_k=max_k,
        expected_equality=False if max_k is not None else None,
        notes=(note,) if note else (),
    )


def _minimal_torus_entry(n: int, p: int) -> CatalogEntry:
    entry = clifford_torus(n, p, math.sqrt(p / n))
    return CatalogEntry(
        label=f"clifford-{n}-{p}",
        dim=entry.dim,
        ambient=entry.ambient,
        data=entry.data,
        expected_max_k=p,
        expected_equality=True,
    )


def _g6_entry(mult: int) -> CatalogEntry:
    _, ops = minimal_isoparametric(6, (mult,) * 6)
    n = 6 * mult
    return CatalogEntry(label=f"g6-minimal-{mult}", dim=n, ambient=n + 1, data=ops)


def _g1_entry() -> CatalogEntry:
    ops = isoparametric(IsoparametricSpec(g=1, theta=math.pi / 4, multiplicities=(4,)))
    return CatalogEntry(label="g1-umbilic-4", dim=4, ambient=5, data=ops)


_BUILDERS = {
    "cartan-12": lambda: _cartan_entry(12),
    "cartan-24": lambda: _cartan_entry(24),
    "g4-minimal-4-5": lambda: _g4_minimal_entry(4, 5),
    "g4-minimal-4-3": lambda: _g4_minimal_entry(4, 3),
    "g4-minimal-4-7": lambda: _g4_minimal_entry(4, 7),
    "g4-minimal-4-11": lambda: _g4_minimal_entry(4, 11),
    "g4-minimal-6-9": lambda: _g4_minimal_entry(6, 9),
    "g4-minimal-4-15": lambda: _g4_minimal_entry(4, 15),
    "clifford-4-2": lambda: _minimal_torus_entry(4, 2),
    "clifford-5-2": lambda: _minimal_torus_entry(5, 2),
    "clifford-7-3": lambda: _minimal_torus_entry(7, 3),
    "clifford-10-4": lambda: _minimal_torus_entry(10, 4),
    "focal-1-3": lambda: focal_entry(1, 3),
    "focal-2-3": lambda: focal_entry(2, 3),
    "focal-4-7": lambda: focal_entry(4, 7),
    "focal-6-9": lambda: focal_entry(6, 9),
    "focal-4-5": lambda: focal_entry(4, 5),
    "proj-C-2": lambda: projective_entry("C", 2),
    "proj-C-3": lambda: projective_entry("C", 3),
    "proj-C-4": lambda: projective_entry("C", 4),
    "proj-C-5": lambda: projective_entry("C", 5),
    "proj-C-6": lambda: projective_entry("C", 6),
    "proj-H-2": lambda: projective_entry("H", 2),
    "proj-H-3": lambda: projective_entry("H", 3),
    "proj-H-4": lambda: projective_entry("H", 4),
    "proj-O-2": lambda: projective_entry("O", 2),
    "g6-minimal-1": lambda: _g6_entry(1),
    "g6-minimal-2": lambda: _g6_entry(2),
    "g1-umbilic-4": _g1_entry,
}


def catalog_labels() -> list[str]:
    return list(_BUILDERS)


def catalog_entry(label: str) -> CatalogEntry:
    if label not in _BUILDERS:
        raise KeyError(f"unknown catalog label {label!r}")
    return _BUILDERS[label]()


def analytic_max_k(desc: AnalyticDescriptor) -> int | None:
    """Largest level at which the stored Ricci value meets the threshold."""
    best = None
    for k in range(2, desc.n // 2 + 1):
        bound = pinch_bound(PinchingParams(desc.n, k, desc.H))
        if desc.ricci_min >= bound - equality_tol(bound):
            best = k
    return best


def analytic_equality(desc: AnalyticDescriptor, k: int) -> bool:
    """True when the stored (attained) Ricci value sits exactly at the bound."""
    bound = pinch_bound(PinchingParams(desc.n, k, desc.H))
    return desc.attained and abs(desc.ricci_min - bound) < equality_tol(bound)


@dataclass(frozen=True)
class SweepResult:
    entry: CatalogEntry
    computed_max_k: int | None
    computed_equality: bool | None
    ok: bool
    mismatches: tuple[str, ...] = ()


def _sweep_one(entry: CatalogEntry) -> SweepResult:
    if isinstance(entry.data, ShapeOperatorSet):
        max_k = max_pinch_k(entry.data)
        equality = None
        if max_k is not None:
            v = check_pinching(entry.data, max_k)
            equality = v.holds and not v.strict
    else:
        max_k = analytic_max_k(entry.data)
        equality = analytic_equality(entry.data, max_k) if max_k is not None else None
    mismatches = []
    if entry.expected_max_k is not None or entry.expected_equality is not None:
        if max_k != entry.expected_max_k:
            mismatches.append(
                f"{entry.label}: max_k expected {entry.expected_max_k}, computed {max_k}"
            )
        if entry.expected_equality is not None and equality != entry.expected_equality:
            mismatches.append(
                f"{entry.label}: equality expected {entry.expected_equality}, computed {equality}"
            )
    return SweepResult(
        entry=entry,
        computed_max_k=max_k,
        computed_equality=equality,
        ok=not mismatches,
        mismatches=tuple(mismatches),
    )


def catalog_sweep(labels: list[str] | None = None) -> list[SweepResult]:
    """Run the pinching test over the catalog and compare against the stored
    expectations.  Mismatches are reported per entry with both values."""
    return [_sweep_one(catalog_entry(lbl)) for lbl in (labels or catalog_labels())]
