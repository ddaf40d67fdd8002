"""Lawson-Simons functional on tangent p-planes and its maximization.

For an orthonormal frame e_1..e_n whose first p vectors span a plane V, the
functional is

    sum_{i<=p<j} (2 |alpha(e_i, e_j)|^2 - <alpha(e_i, e_i), alpha(e_j, e_j)>),

where alpha is the second fundamental form.  It depends only on V: with Pi
the orthogonal projector onto V it equals

    2 sum_a |(I - Pi) A_a Pi|_F^2 - sum_a tr(Pi A_a) (tr A_a - tr(Pi A_a)).

Whether the maximum over the Grassmannian of p-planes reaches p(n-p)
controls the existence of stable currents, hence homology.  The maximizer
search runs projected gradient ascent with a QR retraction from many
starting planes; an independent brute-force oracle validates it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .curvature import EQUALITY_RTOL, ShapeOperatorSet, equality_tol, ricci_operator

# Ascent hyperparameters: fixed by design for determinism.
MAX_ITER = 500
STEP0 = 0.1
GRAD_TOL = 1e-10
# Two planes are identified when their largest principal angle is below this.
ANGLE_TOL = 1e-6


@dataclass(frozen=True)
class SubspaceFrame:
    """Orthonormal p-frame spanning a tangent p-plane, columns of ``basis``."""

    basis: np.ndarray  # (n, p)
    label: str = ""

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2:
            raise ValueError(f"basis must be an (n, p) matrix, got shape {b.shape}")
        gram = b.T @ b
        if np.abs(gram - np.eye(b.shape[1])).max() > 1e-10:
            raise ValueError("basis columns are not orthonormal to 1e-10")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def p(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class LSResult:
    value: float
    maximizer: SubspaceFrame
    bound: float  # p(n-p)
    classification: str  # below | equality | above
    converged: bool = True


def _classify(value: float, bound: float) -> str:
    eps = equality_tol(bound)
    if value > bound + eps:
        return "above"
    if value < bound - eps:
        return "below"
    return "equality"


def principal_angle_max(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle between the column spans of a and b."""
    resid = b - a @ (a.T @ b)
    s = np.linalg.svd(resid, compute_uv=False)
    return float(np.arcsin(np.clip(s.max(initial=0.0), 0.0, 1.0)))


def _values_batch(ops: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Functional values for a batch of frames q with shape (r, n, p)."""
    traces = np.trace(ops, axis1=1, axis2=2)
    aq = np.einsum("aij,rjp->raip", ops, q)
    t = np.einsum("rip,raip->ra", q, aq)
    b = np.einsum("riq,raip->raqp", q, aq)
    cross = np.einsum("raip,raip->ra", aq, aq) - np.einsum("raqp,raqp->ra", b, b)
    return (2.0 * cross - t * (traces[None, :] - t)).sum(axis=1)


def _grad_batch(ops: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Riemannian (horizontal) gradient for a batch of frames."""
    traces = np.trace(ops, axis1=1, axis2=2)
    aq = np.einsum("aij,rjp->raip", ops, q)
    b = np.einsum("riq,raip->raqp", q, aq)
    t = np.einsum("raqq->ra", b)
    a2q = np.einsum("aij,rajp->raip", ops, aq)
    g = 4.0 * a2q.sum(axis=1)
    g -= 8.0 * np.einsum("raiq,raqp->rip", aq, b)
    g += 2.0 * np.einsum("ra,raip->rip", 2.0 * t - traces[None, :], aq)
    qtg = np.einsum("rni,rnp->rip", q, g)
    return g - np.einsum("rni,rip->rnp", q, qtg)


def _retract(y: np.ndarray) -> np.ndarray:
    """QR retraction with sign fix for determinism."""
    q, r = np.linalg.qr(y)
    signs = np.sign(np.einsum("rpp->rp", r))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def _split_blocks(values: np.ndarray, gap: float = 1e-8) -> list[np.ndarray]:
    """Indices of eigenvalue clusters in an ascending spectrum."""
    scale = 1.0 + np.abs(values).max(initial=0.0)
    blocks, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > gap * scale:
            blocks.append(np.arange(start, i))
            start = i
    return blocks


def _allocations(sizes: list[int], p: int, cap: int = 2048):
    """Nonnegative integer allocations of p over blocks, bounded by sizes."""
    out = []

    def rec(i, remaining, current):
        if len(out) >= cap:
            return
        if i == len(sizes):
            if remaining == 0:
                out.append(tuple(current))
            return
        hi = min(sizes[i], remaining)
        for c in range(hi + 1):
            rec(i + 1, remaining - c, current + [c])

    rec(0, p, [])
    return out


def _eigen_seed_frames(s: ShapeOperatorSet, p: int) -> list[np.ndarray]:
    """Starting planes aligned with eigenspaces of each operator and of the
    Ricci operator: one frame per allocation of p among eigenvalue clusters."""
    mats = list(s.operators) + [ricci_operator(s)]
    frames = []
    for mat in mats:
        w, u = np.linalg.eigh(mat)
        blocks = _split_blocks(w)
        sizes = [len(blk) for blk in blocks]
        for alloc in _allocations(sizes, p):
            cols = np.concatenate(
                [blocks[i][: alloc[i]] for i in range(len(blocks)) if alloc[i] > 0]
            )
            frames.append(u[:, cols])
    return frames


def ls_value(s: ShapeOperatorSet, v: SubspaceFrame) -> float:
    """Functional value of the plane spanned by v (projector formula)."""
    if v.n != s.n:
        raise ValueError(f"dimension mismatch: frame has n={v.n}, operators have n={s.n}")
    return float(_values_batch(s.operators, v.basis[None, :, :])[0])


def ls_value_by_completion(s: ShapeOperatorSet, v: SubspaceFrame) -> float:
    """Same value computed from an explicit orthonormal completion.

    Independent route used to validate the projector formula: sums
    2|alpha_ij|^2 - <alpha_ii, alpha_jj> over i <= p < j directly.
    """
    if v.n != s.n:
        raise ValueError(f"dimension mismatch: frame has n={v.n}, operators have n={s.n}")
    n, p = v.n, v.p
    full, _ = np.linalg.qr(np.column_stack([v.basis, np.eye(n)]))
    # Keep the leading p columns exactly aligned with v.
    frame = np.column_stack([v.basis, full[:, p:n]])
    total = 0.0
    for i in range(p):
        for j in range(p, n):
            a_ij = np.array([frame[:, i] @ s.operators[a] @ frame[:, j] for a in range(s.m)])
            a_ii = np.array([frame[:, i] @ s.operators[a] @ frame[:, i] for a in range(s.m)])
            a_jj = np.array([frame[:, j] @ s.operators[a] @ frame[:, j] for a in range(s.m)])
            total += 2.0 * float(a_ij @ a_ij) - float(a_ii @ a_jj)
    return total


def _ascend(ops: np.ndarray, seeds: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run gradient ascent from every seed; returns (frames, values, converged)."""
    q = seeds.copy()
    val = _values_batch(ops, q)
    step = np.full(len(q), STEP0)
    converged = np.zeros(len(q), dtype=bool)
    active = np.ones(len(q), dtype=bool)
    for _ in range(MAX_ITER):
        g = _grad_batch(ops, q)
        gnorm = np.sqrt(np.einsum("rnp,rnp->r", g, g))
        newly = active & (gnorm <= GRAD_TOL)
        converged |= newly
        active &= ~newly
        if not active.any():
            break
        cand = _retract(q + step[:, None, None] * g)
        cval = _values_batch(ops, cand)
        improved = active & (cval > val)
        q[improved] = cand[improved]
        val[improved] = cval[improved]
        stalled = active & ~improved
        step[stalled] *= 0.5
        dead = active & (step < 1e-13)
        active &= ~dead
    return q, val, converged


def _max_search(s: ShapeOperatorSet, p: int, restarts: int, seed: int):
    if not 1 <= p <= s.n - 1:
        raise ValueError(f"p must satisfy 1 <= p <= n-1, got p={p}, n={s.n}")
    rng = np.random.default_rng(seed)
    seeds = _eigen_seed_frames(s, p)
    if restarts > 0:
        raw = rng.standard_normal((restarts, s.n, p))
        seeds.extend(_retract(raw))
    stack = np.stack(seeds)
    return _ascend(s.operators, stack)


def ls_max(s: ShapeOperatorSet, p: int, restarts: int = 100, seed: int = 0) -> LSResult:
    """Best functional value over p-planes found by multistart gradient ascent.

    Restarts are uniform random planes plus eigenspace-aligned planes of each
    shape operator and of the Ricci operator.  Deterministic given the seed:
    restarts tied at the best value (to numerical precision) are resolved by
    seed order, preferring a gradient-converged one.
    """
    frames, values, converged = _max_search(s, p, restarts, seed)
    top = float(values.max())
    tied = np.flatnonzero(values >= top - 1e-12 * (1.0 + abs(top)))
    tied_conv = [i for i in tied if converged[i]]
    best = int(tied_conv[0] if tied_conv else tied[0])
    bound = float(p * (s.n - p))
    value = float(values[best])
    return LSResult(
        value=value,
        maximizer=SubspaceFrame(frames[best]),
        bound=bound,
        classification=_classify(value, bound),
        converged=bool(converged[best]),
    )


def ls_oracle(s: ShapeOperatorSet, p: int, samples: int = 10000, seed: int = 0) -> float:
    """Brute-force maximum over random planes plus coordinate subspaces.

    Coordinate subspaces are enumerated exhaustively when n <= 14.  Serves as
    an independent lower witness for ls_max.
    """
    if not 1 <= p <= s.n - 1:
        raise ValueError(f"p must satisfy 1 <= p <= n-1, got p={p}, n={s.n}")
    rng = np.random.default_rng(seed)
    best = -math.inf
    if s.n <= 14:
        eye = np.eye(s.n)
        combos = [eye[:, list(c)] for c in itertools.combinations(range(s.n), p)]
        best = max(best, float(_values_batch(s.operators, np.stack(combos)).max()))
    chunk = 2000
    remaining = samples
    while remaining > 0:
        take = min(chunk, remaining)
        planes = _retract(rng.standard_normal((take, s.n, p)))
        best = max(best, float(_values_batch(s.operators, planes).max()))
        remaining -= take
    return best


def _snap_to_eigenspaces(s: ShapeOperatorSet, basis: np.ndarray):
    """If every basis vector is (nearly) a joint eigenvector, return the
    common normal-coordinate eigenvalue vector and residual, else None."""
    coeffs = np.array([np.diag(basis.T @ a @ basis).mean() for a in s.operators])
    resid = max(
        float(np.abs(s.operators[a] @ basis - coeffs[a] * basis).max()) for a in range(s.m)
    )
    return coeffs, resid


def joint_eigenspace(s: ShapeOperatorSet, coeffs: np.ndarray, rtol: float = 1e-7) -> np.ndarray:
    """Orthonormal basis of the intersection over a of ker(A_a - coeffs[a] I).

    Singular values below rtol times the operator norm count as zero.
    """
    basis = np.eye(s.n)
    for a in range(s.m):
        if basis.shape[1] == 0:
            break
        op = s.operators[a]
        opnorm = float(np.abs(np.linalg.eigvalsh(op)).max())
        mat = (op - coeffs[a] * np.eye(s.n)) @ basis
        u, sv, vt = np.linalg.svd(mat, full_matrices=True)
        keep = sv < rtol * max(opnorm, 1.0)
        null = vt[len(sv):].T if vt.shape[0] > len(sv) else np.zeros((basis.shape[1], 0))
        small = vt[: len(sv)][keep].T
        basis = basis @ np.column_stack([small, null])
        if basis.shape[1] > 1:
            basis, _ = np.linalg.qr(basis)
    return basis


def equality_subspaces(
    s: ShapeOperatorSet, p: int, restarts: int = 100, seed: int = 0
) -> list[SubspaceFrame]:
    """Representative maximizer planes attaining the bound p(n-p).

    Maximizers contained in a joint eigenspace are grouped by their common
    normal-coordinate eigenvalue vector and reported once, snapped onto the
    eigenspace and labelled "eigenspace-contained" (equality sets can be
    continua).  Remaining frames are deduplicated by principal angles.
    """
    frames, values, _ = _max_search(s, p, restarts, seed)
    bound = float(p * (s.n - p))
    eps = equality_tol(bound)
    hits = [frames[i] for i in range(len(frames)) if abs(values[i] - bound) < eps]
    grouped: dict[tuple, np.ndarray] = {}
    loose: list[np.ndarray] = []
    for basis in hits:
        coeffs, resid = _snap_to_eigenspaces(s, basis)
        if resid < 1e-6:
            key = tuple(np.round(coeffs, 6))
            if key in grouped:
                continue
            eig = joint_eigenspace(s, coeffs)
            snapped, _ = np.linalg.qr(eig @ (eig.T @ basis))
            grouped[key] = snapped[:, :p]
        else:
            if all(principal_angle_max(other, basis) > ANGLE_TOL for other in loose):
                loose.append(basis)
    out = [SubspaceFrame(b, label="eigenspace-contained") for b in grouped.values()]
    out.extend(SubspaceFrame(b) for b in loose)
    return out
