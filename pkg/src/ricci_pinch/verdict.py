"""Decide the pinching condition and extract the umbilic Dupin structure.

A point satisfies the pinching condition at level k when the minimum Ricci
curvature is at least b(n, k, H).  Non-strict verdicts come with equality
directions, and in the extremal situation there is a Dupin principal normal
eta whose umbilic eigenspace

    E_eta = { X : alpha(X, Y) = <X, Y> eta for all Y }

has dimension at least k and norm equal to the upper shape bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import (
    MEAN_ZERO_TOL,
    PinchingParams,
    ShapeOperatorSet,
    equality_tol,
    mean_curvature,
    pinch_bound,
    pinch_scalars,
    ricci_operator,
)
from .lawson_simons import (
    SubspaceFrame,
    _snap_to_eigenspaces,
    equality_subspaces,
    joint_eigenspace,
    ls_value,
)

# Residual below which a frame is accepted as umbilic before snapping.
DETECT_TOL = 1e-6
# Residual the snapped structure must meet.
VERIFY_TOL = 1e-8


@dataclass(frozen=True)
class PinchVerdict:
    """Outcome of the pinching test at a fixed level k."""

    k: int
    holds: bool
    strict: bool
    bound: float
    ricci_min: float
    equality_directions: np.ndarray  # (n, d) unit eigenvectors at the bound
    max_k: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "holds": bool(self.holds),
            "strict": bool(self.strict),
            "b": self.bound,
            "ricci_min": self.ricci_min,
        }


@dataclass(frozen=True)
class DupinDetection:
    """A detected Dupin principal normal with its umbilic eigenspace.

    ``weak`` marks the degenerate k = 2, H = 0 form where the umbilic
    relation is certified only for arguments inside the detected plane.
    """

    normal: np.ndarray  # normal coordinates of eta
    norm: float
    basis: np.ndarray  # (n, multiplicity) orthonormal basis of E_eta
    multiplicity: int
    collinear_with_mean: bool
    weak: bool = False

    def to_json_dict(self) -> dict:
        return {
            "normal": self.normal.tolist(),
            "norm": self.norm,
            "multiplicity": self.multiplicity,
            "collinear_with_mean_curvature": bool(self.collinear_with_mean),
            "weak": bool(self.weak),
        }


def check_pinching(s: ShapeOperatorSet, k: int) -> PinchVerdict:
    """Compare the minimal Ricci curvature against b(n, k, H) at level k."""
    h = mean_curvature(s)
    params = PinchingParams(s.n, k, h.length if h.direction is not None else 0.0)
    bound = pinch_bound(params)
    eps = equality_tol(bound)
    eigvals, eigvecs = np.linalg.eigh(ricci_operator(s))
    rmin = float(eigvals[0])
    at_bound = np.abs(eigvals - bound) < eps
    return PinchVerdict(
        k=k,
        holds=rmin >= bound - eps,
        strict=rmin > bound + eps,
        bound=bound,
        ricci_min=rmin,
        equality_directions=eigvecs[:, at_bound],
    )


def max_pinch_k(s: ShapeOperatorSet) -> int | None:
    """Largest level 2 <= k <= n/2 at which the pinching condition holds."""
    best = None
    for k in range(2, s.n // 2 + 1):
        if check_pinching(s, k).holds:
            best = k
    return best


def multiplicity_window_check(n: int, k: int, ell: int) -> bool:
    """Admissible multiplicity of the Dupin normal at level k.

    k <= ell <= n - k - 1 when k < n/2, and ell = k when n is even with
    k = n/2.
    """
    PinchingParams(n, k)  # validates the (n, k) range
    if ell < 2 or int(ell) != ell:
        raise ValueError(f"multiplicity must be an integer >= 2, got {ell}")
    if 2 * k < n:
        return k <= ell <= n - k - 1
    return ell == k


def _detect_from_frame(
    s: ShapeOperatorSet, frame: np.ndarray, k: int, h_len: float, h_dir: np.ndarray | None
) -> DupinDetection | None:
    coeffs, resid = _snap_to_eigenspaces(s, frame)
    params = PinchingParams(s.n, k, h_len if h_dir is not None else 0.0)
    upper = pinch_scalars(params).shape_upper
    if resid < DETECT_TOL:
        eig = joint_eigenspace(s, coeffs)
        if eig.shape[1] >= k:
            # Refine eta on the snapped eigenspace and reverify.
            coeffs = np.array([np.diag(eig.T @ a @ eig).mean() for a in s.operators])
            final = max(
                float(np.abs(s.operators[a] @ eig - coeffs[a] * eig).max())
                for a in range(s.m)
            )
            if final < VERIFY_TOL:
                norm = float(np.linalg.norm(coeffs))
                collinear = False
                if h_dir is not None and norm > 0:
                    collinear = float(coeffs @ h_dir) / norm > 1.0 - 1e-8
                return DupinDetection(
                    normal=coeffs,
                    norm=norm,
                    basis=eig,
                    multiplicity=eig.shape[1],
                    collinear_with_mean=collinear,
                )
    if k == 2 and h_dir is None:
        # Degenerate form: the umbilic relation restricted to the plane itself.
        inner = np.array([frame.T @ a @ frame for a in s.operators])
        coeffs = np.array([np.diag(m).mean() for m in inner])
        resid = max(
            float(np.abs(inner[a] - coeffs[a] * np.eye(2)).max()) for a in range(s.m)
        )
        norm = float(np.linalg.norm(coeffs))
        if resid < VERIFY_TOL and norm <= upper + equality_tol(upper):
            return DupinDetection(
                normal=coeffs,
                norm=norm,
                basis=frame,
                multiplicity=2,
                collinear_with_mean=False,
                weak=True,
            )
    return None


def dupin_detect_all(
    s: ShapeOperatorSet, k: int, restarts: int = 100, seed: int = 0
) -> list[DupinDetection]:
    """All Dupin normals detected from equality planes of the functional."""
    verdict = check_pinching(s, k)
    if not verdict.holds or verdict.strict:
        return []
    h = mean_curvature(s)
    detections: list[DupinDetection] = []
    seen: set[tuple] = set()
    for frame in equality_subspaces(s, k, restarts=restarts, seed=seed):
        det = _detect_from_frame(s, frame.basis, k, h.length, h.direction)
        if det is None:
            continue
        key = tuple(np.round(det.normal, 8))
        if key in seen:
            continue
        seen.add(key)
        detections.append(det)
    detections.sort(key=lambda d: (-d.norm, tuple(-d.normal)))
    return detections


def dupin_detect(
    s: ShapeOperatorSet, k: int, restarts: int = 100, seed: int = 0
) -> DupinDetection | None:
    """First detected Dupin normal, or None when the verdict is strict or no
    umbilic structure is found."""
    detections = dupin_detect_all(s, k, restarts=restarts, seed=seed)
    return detections[0] if detections else None


def equality_frame_excess(
    s: ShapeOperatorSet, v: SubspaceFrame, normal: np.ndarray | None = None
) -> float:
    """Functional value of v minus k(n-k), for v complementary to a candidate
    umbilic eigenspace of dimension n - k.

    A positive excess certifies that a Dupin normal of multiplicity n - k is
    impossible at levels k < n/2.  When ``normal`` is given the complement is
    verified to satisfy the umbilic relation.
    """
    if v.n != s.n:
        raise ValueError(f"dimension mismatch: frame has n={v.n}, operators have n={s.n}")
    k = v.p
    if normal is not None:
        normal = np.asarray(normal, dtype=float)
        comp = np.linalg.svd(v.basis, full_matrices=True)[0][:, k:]
        resid = max(
            float(np.abs(s.operators[a] @ comp - normal[a] * comp).max())
            for a in range(s.m)
        )
        if resid > 1e-6:
            raise ValueError(
                f"complement of the frame is not umbilic for the given normal (residual {resid:.2e})"
            )
    return ls_value(s, v) - k * (s.n - k)


def expected_excess(n: int, k: int, h: float) -> float:
    """Closed form of the excess for the synthetic multiplicity-(n-k) point."""
    d = math.sqrt(n * n * h * h + 4.0 * k * (n - k))
    return (n - k) * (n - 2 * k) * (n * n * h * h + n * h * d + 2.0 * k * n) / (2.0 * k * k)
