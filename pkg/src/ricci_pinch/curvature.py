"""Pointwise curvature quantities for submanifolds of the unit sphere.

A submanifold is described extrinsically by its shape operators: m real
symmetric n x n matrices taken with respect to an orthonormal basis of the
normal space.  From these the Gauss equation produces the Ricci operator,

    R = (n - 1) I + sum_a tr(A_a) A_a - sum_a A_a^2,

whose smallest eigenvalue is the pointwise minimum of the Ricci curvature
over unit tangent directions.  The pinching threshold

    b(n, k, H) = n(k-1)/k + n(k-1)H/(2k^2) (nH + sqrt(n^2 H^2 + 4k(n-k)))

is compared against that minimum; the companion quadratic
P(t) = t^2 - nHt + b - n + 1 has roots which bound the quadratic form of
the shape operator along the mean curvature direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

# Relative tolerance that separates "equality" from "strict" everywhere.
EQUALITY_RTOL = 1e-9
# |H| below this counts as minimal (branch cut between the H = 0 and H > 0 cases).
MEAN_ZERO_TOL = 1e-9
# Largest tolerated asymmetry of an input shape operator.
SYMMETRY_TOL = 1e-12
# Number of unit normals sampled when checking eigenvalue bounds at H = 0.
NORMAL_SAMPLES = 64


def equality_tol(scale: float) -> float:
    """Absolute tolerance for an equality test at the given scale."""
    return EQUALITY_RTOL * (1.0 + abs(scale))


@dataclass(frozen=True)
class PinchingParams:
    """Dimension n >= 4, level 2 <= k <= n/2 and mean curvature length H >= 0."""

    n: int
    k: int
    H: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 4:
            raise ValueError(f"n must be an integer >= 4, got {self.n}")
        if int(self.k) != self.k or not 2 <= self.k <= self.n / 2:
            raise ValueError(f"k must be an integer with 2 <= k <= n/2, got k={self.k}, n={self.n}")
        if not self.H >= 0.0:
            raise ValueError(f"H must be >= 0, got {self.H}")


@dataclass(frozen=True)
class PinchScalars:
    """The pinching bound together with the two roots of its companion quadratic.

    ``shape_upper`` and ``shape_lower`` bound <A_1 X, X> over unit tangent
    vectors whenever the pinching condition holds; they satisfy the Vieta
    identities shape_upper + shape_lower = nH and
    shape_upper * shape_lower = bound - n + 1.
    """

    bound: float
    shape_upper: float
    shape_lower: float


def _discriminant(p: PinchingParams) -> float:
    n, k, H = p.n, p.k, p.H
    return math.sqrt(n * n * H * H + 4.0 * k * (n - k))


def pinch_bound(p: PinchingParams) -> float:
    """Pinching threshold b(n, k, H)."""
    n, k, H = p.n, p.k, p.H
    return n * (k - 1) / k + n * (k - 1) * H / (2.0 * k * k) * (n * H + _discriminant(p))


def pinch_scalars(p: PinchingParams) -> PinchScalars:
    """Bound plus the two roots of P(t) = t^2 - nHt + b - n + 1."""
    n, k, H = p.n, p.k, p.H
    d = _discriminant(p)
    upper = (n * H + d) / (2.0 * k)
    lower = (n * (2 * k - 1) * H - d) / (2.0 * k)
    return PinchScalars(bound=pinch_bound(p), shape_upper=upper, shape_lower=lower)


def pinch_poly_eval(p: PinchingParams, t: float) -> float:
    """Companion quadratic P(t); its roots are the shape bounds."""
    return t * t - p.n * p.H * t + pinch_bound(p) - p.n + 1.0


def mean_bound_check(p: PinchingParams) -> bool:
    """True iff n^2 (k-2) H^2 < 4(n-k), the admissible mean-curvature range."""
    n, k, H = p.n, p.k, p.H
    return n * n * (k - 2) * H * H < 4.0 * (n - k)


@dataclass(frozen=True)
class ShapeOperatorSet:
    """m symmetric n x n shape operators in an orthonormal normal basis.

    When ``aligned`` is set and the mean curvature does not vanish, the first
    normal direction is the mean curvature direction: tr A_1 = nH > 0 and
    tr A_a = 0 for a >= 2.
    """

    operators: np.ndarray  # (m, n, n)
    aligned: bool = False
    label: str = ""

    def __post_init__(self):
        ops = np.asarray(self.operators, dtype=float)
        if ops.ndim == 2:
            ops = ops[None, :, :]
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise ValueError(f"operators must have shape (m, n, n), got {ops.shape}")
        asym = np.abs(ops - np.swapaxes(ops, 1, 2)).max()
        if asym > SYMMETRY_TOL:
            raise ValueError(f"shape operators must be symmetric (max asymmetry {asym:.3e})")
        ops = 0.5 * (ops + np.swapaxes(ops, 1, 2))
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)
        n = ops.shape[1]
        traces = np.trace(ops, axis1=1, axis2=2)
        h = float(np.linalg.norm(traces)) / n
        if self.aligned and h > MEAN_ZERO_TOL:
            if traces[0] <= 0.0:
                raise ValueError("aligned flag set but tr A_1 is not positive")
            if ops.shape[0] > 1 and np.abs(traces[1:]).max() > 1e-9:
                raise ValueError("aligned flag set but tr A_a != 0 for some a >= 2")

    @property
    def n(self) -> int:
        return self.operators.shape[1]

    @property
    def m(self) -> int:
        return self.operators.shape[0]

    def traces(self) -> np.ndarray:
        return np.trace(self.operators, axis1=1, axis2=2)

    def mean_vector(self) -> np.ndarray:
        """Mean curvature vector in normal coordinates, (tr A_1, ..., tr A_m)/n."""
        return self.traces() / self.n

    def align(self) -> "ShapeOperatorSet":
        """Rotate the normal basis so the first direction is the mean direction.

        Returns self when already aligned or minimal.
        """
        hvec = self.mean_vector()
        h = float(np.linalg.norm(hvec))
        if h <= MEAN_ZERO_TOL or (self.aligned and hvec[0] > 0):
            return self
        u = hvec / h
        # Orthogonal completion of u, deterministic via QR.
        basis = np.eye(self.m)
        cols = np.column_stack([u, basis])
        q, _ = np.linalg.qr(cols)
        # Fix the first column to be exactly +u.
        if np.dot(q[:, 0], u) < 0:
            q[:, 0] = -q[:, 0]
        rot = q.T  # rows are the new normal directions
        new_ops = np.einsum("ba,aij->bij", rot, self.operators)
        return ShapeOperatorSet(new_ops, aligned=True, label=self.label)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "operators": [a.tolist() for a in self.operators],
            "aligned": bool(self.aligned),
            "label": self.label,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ShapeOperatorSet":
        for key in ("n", "m", "operators", "aligned"):
            if key not in data:
                raise ValueError(f"missing field '{key}' in shape operator document")
        ops = np.asarray(data["operators"], dtype=float)
        if ops.shape != (data["m"], data["n"], data["n"]):
            raise ValueError(
                f"operators: expected shape ({data['m']}, {data['n']}, {data['n']}), got {ops.shape}"
            )
        return cls(ops, aligned=bool(data["aligned"]), label=str(data.get("label", "")))


@dataclass(frozen=True)
class MeanCurvature:
    """Length of the mean curvature vector with its unit normal direction.

    ``direction`` is None when the point is minimal (H below the branch cut).
    """

    length: float
    direction: np.ndarray | None


def mean_curvature(s: ShapeOperatorSet) -> MeanCurvature:
    hvec = s.mean_vector()
    h = float(np.linalg.norm(hvec))
    if h <= MEAN_ZERO_TOL:
        return MeanCurvature(length=h, direction=None)
    return MeanCurvature(length=h, direction=hvec / h)


def ricci_operator(s: ShapeOperatorSet) -> np.ndarray:
    """Ricci operator (n-1) I + sum_a tr(A_a) A_a - sum_a A_a^2."""
    n = s.n
    traces = s.traces()
    r = (n - 1.0) * np.eye(n)
    r += np.einsum("a,aij->ij", traces, s.operators)
    r -= np.einsum("aik,akj->ij", s.operators, s.operators)
    return 0.5 * (r + r.T)


def ricci_direction(s: ShapeOperatorSet, x: np.ndarray) -> float:
    """Ricci curvature in the direction of the unit tangent vector x."""
    x = np.asarray(x, dtype=float)
    value = s.n - 1.0
    for a in range(s.m):
        ax = s.operators[a] @ x
        value += np.trace(s.operators[a]) * float(x @ ax) - float(ax @ ax)
    return value


def ricci_min(s: ShapeOperatorSet) -> float:
    """Minimum of the Ricci curvature over unit tangent directions."""
    return float(np.linalg.eigvalsh(ricci_operator(s))[0])


def unit_normal_samples(m: int, count: int = NORMAL_SAMPLES) -> np.ndarray:
    """Deterministic low-discrepancy unit vectors on the (m-1)-sphere."""
    if m == 1:
        return np.array([[1.0], [-1.0]])
    if m == 2:
        angles = 2.0 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    sampler = qmc.Halton(d=m, scramble=False)
    raw = sampler.random(2 * count + 8)
    good = raw[np.all((raw > 1e-6) & (raw < 1.0 - 1e-6), axis=1)][:count]
    gauss = ndtri(good)
    return gauss / np.linalg.norm(gauss, axis=1, keepdims=True)


@dataclass(frozen=True)
class BoundsCheck:
    """Outcome of the shape-operator eigenvalue bound test.

    ``violations`` lists (normal index, eigenvalue, violated side) triples;
    the normal index is None in the aligned H > 0 branch.
    """

    ok: bool
    violations: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def shape_bounds_check(s: ShapeOperatorSet, k: int) -> BoundsCheck:
    """Check that shape operator spectra lie in [shape_lower, shape_upper].

    For H > 0 the bound applies to A_1 in the aligned basis; for H = 0 it
    applies to A_xi for every unit normal xi and is checked on a deterministic
    sample of normals.
    """
    eps = 1e-9
    h = mean_curvature(s)
    scalars = pinch_scalars(PinchingParams(s.n, k, h.length if h.direction is not None else 0.0))
    lo, hi = scalars.shape_lower - eps, scalars.shape_upper + eps
    violations = []
    if h.direction is not None:
        if not s.aligned:
            raise ValueError("shape_bounds_check with H > 0 requires an aligned operator set")
        for ev in np.linalg.eigvalsh(s.operators[0]):
            if ev < lo:
                violations.append((None, float(ev), "below"))
            elif ev > hi:
                violations.append((None, float(ev), "above"))
    else:
        for idx, xi in enumerate(unit_normal_samples(s.m)):
            a_xi = np.einsum("a,aij->ij", xi, s.operators)
            for ev in np.linalg.eigvalsh(a_xi):
                if ev < lo:
                    violations.append((idx, float(ev), "below"))
                elif ev > hi:
                    violations.append((idx, float(ev), "above"))
    return BoundsCheck(ok=not violations, violations=tuple(violations))
