"""Tubes over spherical submanifolds and their Dupin structure.

Given an immersion g of a d-dimensional base into the unit sphere of
R^N and a radius function tau with |grad tau| < 1, the tube map on the
unit normal bundle is

    Psi(x, w) = cos(tau) g - sin(tau) (g_* grad(tau) + sqrt(1 - |grad tau|^2) w),

with Gauss map

    N(x, w) = sin(tau) g + cos(tau) (g_* grad(tau) + sqrt(1 - |grad tau|^2) w).

Psi is regular exactly where the endomorphism

    P(x, w) = cos(tau)(I - grad(tau) grad(tau)^T) - sin(tau) Hess(tau)
              + sin(tau) sqrt(1 - |grad tau|^2) A_w

is nonsingular, and every vertical direction of the bundle is principal for
the tube with curvature cot(tau).  The functions here evaluate these maps,
assemble P, verify the identities by finite differences, and build the
focal map h = cos(sigma) f + sin(sigma) eta/|eta| that collapses an umbilic
eigenspace back onto its base.

Patches are evaluator-based: a patch supplies callables for the base point,
the radius function and an orthonormal normal frame; derivatives default to
central finite differences.  Chart coordinates must be orthonormal at the
evaluation point whenever a patch supplies a nonconstant radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curvature import ShapeOperatorSet
from .lawson_simons import joint_eigenspace

FD_STEP = 1e-5


def central_diff(f: Callable[[float], np.ndarray], h: float = FD_STEP) -> np.ndarray:
    """Central difference derivative of a curve at t = 0."""
    return (np.asarray(f(h)) - np.asarray(f(-h))) / (2.0 * h)


def richardson_diff(f: Callable[[float], np.ndarray], h: float = FD_STEP) -> np.ndarray:
    """Richardson-extrapolated central difference (fourth order)."""
    return (4.0 * central_diff(f, h / 2.0) - central_diff(f, h)) / 3.0


class TubePatch:
    """Base immersion with radius data for the tube construction.

    Subclasses provide ``base`` (point on the unit sphere of R^N), the
    radius ``tau`` with chart gradient/Hessian (zero by default), and an
    orthonormal ``normal_frame`` spanning the normal space inside the sphere.
    """

    def __init__(self, base_dim: int, ambient_dim: int, tau_value: float):
        if not 0.0 < tau_value < math.pi / 2:
            raise ValueError(f"tau must lie in (0, pi/2), got {tau_value}")
        self.base_dim = base_dim
        self.ambient_dim = ambient_dim
        self.fiber_dim = ambient_dim - 1 - base_dim  # normals inside the sphere
        self.tau_value = tau_value

    def base(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def normal_frame(self, x: np.ndarray) -> np.ndarray:
        """(fiber_dim, N) orthonormal rows, smooth in x."""
        raise NotImplementedError

    def tau(self, x: np.ndarray) -> float:
        return self.tau_value

    def tau_grad(self, x: np.ndarray) -> np.ndarray:
        return np.zeros(self.base_dim)

    def tau_hess(self, x: np.ndarray) -> np.ndarray:
        return np.zeros((self.base_dim, self.base_dim))

    def base_jacobian(self, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        cols = []
        for i in range(self.base_dim):
            e = np.zeros(self.base_dim)
            e[i] = 1.0
            cols.append(central_diff(lambda t: self.base(x + t * e), h))
        return np.column_stack(cols)

    def base_second(self, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
        """(N, d, d) second coordinate derivatives of the base map."""
        x = np.asarray(x, dtype=float)
        d = self.base_dim
        out = np.zeros((self.ambient_dim, d, d))
        f0 = self.base(x)
        for i in range(d):
            ei = np.zeros(d)
            ei[i] = 1.0
            out[:, i, i] = (self.base(x + h * ei) - 2.0 * f0 + self.base(x - h * ei)) / h**2
            for j in range(i + 1, d):
                ej = np.zeros(d)
                ej[j] = 1.0
                mixed = (
                    self.base(x + h * ei + h * ej)
                    - self.base(x + h * ei - h * ej)
                    - self.base(x - h * ei + h * ej)
                    + self.base(x - h * ei - h * ej)
                ) / (4.0 * h**2)
                out[:, i, j] = mixed
                out[:, j, i] = mixed
        return out

    def tangent_orthonormalizer(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(U, C) with orthonormal tangent columns U = J C for the chart
        Jacobian J."""
        jac = self.base_jacobian(x)
        q, r = np.linalg.qr(jac)
        return q, np.linalg.inv(r)

    def shape_operator(self, x: np.ndarray, w_ambient: np.ndarray) -> np.ndarray:
        """Shape operator of the base along the unit normal w, expressed in
        the orthonormalized tangent basis.  Default: finite differences of
        the base map; <A_w X, Y> = <second derivative, w> since w is normal."""
        _, c = self.tangent_orthonormalizer(x)
        second = self.base_second(x)
        m = np.einsum("nij,n->ij", second, w_ambient)
        a = c.T @ m @ c
        return 0.5 * (a + a.T)


@dataclass(frozen=True)
class TubePoint:
    """Point of the unit normal bundle: chart coordinates x and unit fiber
    coefficients w in the patch's normal frame."""

    x: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        w = np.asarray(self.w, dtype=float)
        if abs(np.linalg.norm(w) - 1.0) > 1e-10:
            raise ValueError("fiber coefficients must have unit norm to 1e-10")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "w", w)


@dataclass(frozen=True)
class LambdaTangent:
    """Tangent vector of the unit normal bundle, split into a base chart
    component and a fiber component (which must be orthogonal to w)."""

    base: np.ndarray
    fiber: np.ndarray


def _tube_pieces(patch: TubePatch, q: TubePoint):
    g = patch.base(q.x)
    frame = patch.normal_frame(q.x)
    w_amb = q.w @ frame
    t = patch.tau(q.x)
    u, c = None, None
    grad_chart = patch.tau_grad(q.x)
    if np.any(grad_chart):
        u, c = patch.tangent_orthonormalizer(q.x)
        grad_on = c.T @ grad_chart  # gradient in the orthonormal basis
        grad_amb = u @ grad_on
    else:
        grad_on = np.zeros(patch.base_dim)
        grad_amb = np.zeros(patch.ambient_dim)
    gnorm2 = float(grad_on @ grad_on)
    if gnorm2 >= 1.0:
        raise ValueError(f"|grad tau| must be < 1, got {math.sqrt(gnorm2):.6f}")
    root = math.sqrt(1.0 - gnorm2)
    return g, w_amb, t, grad_amb, grad_on, root, u, c


def tube_point(patch: TubePatch, q: TubePoint) -> np.ndarray:
    """Psi(x, w); lies on the unit sphere by construction."""
    g, w_amb, t, grad_amb, _, root, _, _ = _tube_pieces(patch, q)
    return math.cos(t) * g - math.sin(t) * (grad_amb + root * w_amb)


def tube_gauss(patch: TubePatch, q: TubePoint) -> np.ndarray:
    """Unit normal of the tube at Psi(x, w); orthogonal to Psi exactly."""
    g, w_amb, t, grad_amb, _, root, _, _ = _tube_pieces(patch, q)
    return math.sin(t) * g + math.cos(t) * (grad_amb + root * w_amb)


def regularity_endomorphism(patch: TubePatch, q: TubePoint) -> np.ndarray:
    """P(x, w) in an orthonormal tangent basis; Psi is regular at (x, w)
    iff this matrix is nonsingular."""
    g, w_amb, t, grad_amb, grad_on, root, u, c = _tube_pieces(patch, q)
    d = patch.base_dim
    a_w = patch.shape_operator(q.x, w_amb)
    hess = patch.tau_hess(q.x)
    p = math.cos(t) * (np.eye(d) - np.outer(grad_on, grad_on))
    p -= math.sin(t) * hess
    p += math.sin(t) * root * a_w
    return p


def _fiber_curve(patch: TubePatch, q: TubePoint, v_fiber: np.ndarray):
    """Great-circle curve through w in fiber-coefficient space."""
    speed = np.linalg.norm(v_fiber)
    if speed == 0.0:
        return lambda t: q.w
    vhat = v_fiber / speed

    def curve(t: float) -> np.ndarray:
        return math.cos(speed * t) * q.w + math.sin(speed * t) * vhat

    return curve


def _lambda_curve(patch: TubePatch, q: TubePoint, v: LambdaTangent):
    """Curve in the unit normal bundle with initial velocity v."""
    v_base = np.atleast_1d(np.asarray(v.base, dtype=float))
    v_fiber = np.asarray(v.fiber, dtype=float)
    fiber = _fiber_curve(patch, q, v_fiber)

    def curve(t: float) -> TubePoint:
        return TubePoint(q.x + t * v_base, fiber(t))

    return curve


def tube_map_derivative(
    patch: TubePatch, q: TubePoint, v: LambdaTangent, func=tube_point, richardson: bool = False
) -> np.ndarray:
    """Finite-difference derivative of a tube-built map along v."""
    curve = _lambda_curve(patch, q, v)
    diff = richardson_diff if richardson else central_diff
    return diff(lambda t: func(patch, curve(t)))


def gauss_orthogonality_residual(
    patch: TubePatch, q: TubePoint, v: LambdaTangent
) -> float:
    """|<Psi_* v, N>| by central differences; near zero on valid patches."""
    dpsi = tube_map_derivative(patch, q, v)
    resid = abs(float(dpsi @ tube_gauss(patch, q)))
    if resid > 1e-6 * max(1.0, np.linalg.norm(dpsi)):
        dpsi = tube_map_derivative(patch, q, v, richardson=True)
        resid = abs(float(dpsi @ tube_gauss(patch, q)))
    return resid


def vertical_shape_check(patch: TubePatch, q: TubePoint, v) -> float:
    """Residual |N_* V + cot(tau) Psi_* V| for a vertical tangent V.

    Vertical directions are principal for the tube with curvature cot(tau),
    so the residual vanishes up to finite-difference error.
    """
    if isinstance(v, LambdaTangent):
        base = np.atleast_1d(np.asarray(v.base, dtype=float))
        if base.size and np.linalg.norm(base) > 1e-10:
            raise ValueError("tangent vector is not vertical: base component too large")
        fiber = np.asarray(v.fiber, dtype=float)
    else:
        fiber = np.asarray(v, dtype=float)
    if fiber.size and abs(float(fiber @ q.w)) > 1e-10:
        raise ValueError("tangent vector is not tangent to the unit fiber at w")
    if not np.any(fiber):
        return 0.0
    vert = LambdaTangent(base=np.zeros(patch.base_dim), fiber=fiber)
    dpsi = tube_map_derivative(patch, q, vert)
    dgauss = tube_map_derivative(patch, q, vert, func=tube_gauss)
    cot = math.cos(patch.tau(q.x)) / math.sin(patch.tau(q.x))
    resid = float(np.linalg.norm(dgauss + cot * dpsi))
    if resid > 1e-6 * max(1.0, np.linalg.norm(dpsi)):
        dpsi = tube_map_derivative(patch, q, vert, richardson=True)
        dgauss = tube_map_derivative(patch, q, vert, func=tube_gauss, richardson=True)
        resid = float(np.linalg.norm(dgauss + cot * dpsi))
    return resid


def tube_differential(patch: TubePatch, q: TubePoint, v: LambdaTangent) -> np.ndarray:
    """Analytic differential of Psi assembled from P(x, w) and the normal
    connection terms; matches the finite-difference derivative on analytic
    patches."""
    g, w_amb, t, grad_amb, grad_on, root, u, c = _tube_pieces(patch, q)
    if u is None:
        u, c = patch.tangent_orthonormalizer(q.x)
    z_chart = np.atleast_1d(np.asarray(v.base, dtype=float))
    z_on = np.linalg.solve(c, z_chart) if np.any(z_chart) else np.zeros(patch.base_dim)
    # z in the orthonormal basis: chart velocity x' maps to U (C^-1 x')... J x' = U R x'.
    p_mat = regularity_endomorphism(patch, q)
    out = u @ (p_mat @ z_on)
    frame = patch.normal_frame(q.x)
    # Second fundamental form of the base evaluated on (Z, grad tau).
    if np.any(grad_on) and np.any(z_on):
        alpha = np.zeros(patch.ambient_dim)
        for nu in frame:
            a_nu = patch.shape_operator(q.x, nu)
            alpha += float(z_on @ a_nu @ grad_on) * nu
        out -= math.sin(t) * alpha
        hess = patch.tau_hess(q.x)
        out -= math.cos(t) * float(z_on @ grad_on) * root * w_amb
        out += math.sin(t) * float((hess @ z_on) @ grad_on) / root * w_amb
    # Normal-connection derivative of w along the curve.
    dframe = np.zeros_like(frame)
    if np.any(z_chart):
        for i, zi in enumerate(z_chart):
            if zi == 0.0:
                continue
            e = np.zeros(patch.base_dim)
            e[i] = 1.0
            dframe += zi * central_diff(lambda s: patch.normal_frame(q.x + s * e))
    w_dot = np.asarray(v.fiber, dtype=float) @ frame + q.w @ dframe
    # Project onto the normal space (the frame spans it).
    w_perp = (w_dot @ frame.T) @ frame
    out -= math.sin(t) * root * w_perp
    return out


def tube_jacobian(patch: TubePatch, q: TubePoint, richardson: bool = False) -> np.ndarray:
    """Full finite-difference Jacobian of Psi, shape (N, d + fiber_dim - 1).

    Fiber columns use great-circle directions spanning the orthogonal
    complement of w.
    """
    cols = []
    for i in range(patch.base_dim):
        e = np.zeros(patch.base_dim)
        e[i] = 1.0
        cols.append(
            tube_map_derivative(
                patch, q, LambdaTangent(base=e, fiber=np.zeros(patch.fiber_dim)),
                richardson=richardson,
            )
        )
    comp = np.linalg.svd(q.w[None, :], full_matrices=True)[2][1:]
    for direction in comp:
        cols.append(
            tube_map_derivative(
                patch, q, LambdaTangent(base=np.zeros(patch.base_dim), fiber=direction),
                richardson=richardson,
            )
        )
    return np.column_stack(cols)


# ---------------------------------------------------------------------------
# Built-in patches


def _sphere_chart(angles: np.ndarray) -> np.ndarray:
    """Standard angle chart of the unit k-sphere in R^(k+1)."""
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    out = np.empty(len(angles) + 1)
    sin_prod = 1.0
    for i, a in enumerate(angles):
        out[i] = sin_prod * math.cos(a)
        sin_prod *= math.sin(a)
    out[-1] = sin_prod
    return out


class GreatCirclePatch(TubePatch):
    """Arclength-parametrized great circle in the 3-sphere.

    Optionally takes a variable radius (tau, tau', tau'') as callables of the
    arclength parameter; the chart is orthonormal so gradient and Hessian are
    the plain derivatives.
    """

    def __init__(self, tau=math.pi / 4, dtau=None, d2tau=None):
        value = tau(0.0) if callable(tau) else float(tau)
        super().__init__(base_dim=1, ambient_dim=4, tau_value=value)
        self._tau = tau if callable(tau) else None
        self._dtau = dtau
        self._d2tau = d2tau

    def base(self, x):
        s = float(np.atleast_1d(x)[0])
        return np.array([math.cos(s), math.sin(s), 0.0, 0.0])

    def normal_frame(self, x):
        return np.array([[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])

    def tau(self, x):
        if self._tau is None:
            return self.tau_value
        return float(self._tau(float(np.atleast_1d(x)[0])))

    def tau_grad(self, x):
        if self._dtau is None:
            return np.zeros(1)
        return np.array([self._dtau(float(np.atleast_1d(x)[0]))])

    def tau_hess(self, x):
        if self._d2tau is None:
            return np.zeros((1, 1))
        return np.array([[self._d2tau(float(np.atleast_1d(x)[0]))]])

    def shape_operator(self, x, w_ambient):
        return np.zeros((1, 1))


class SmallCirclePatch(TubePatch):
    """Arclength-parametrized circle of latitude a in a great 2-sphere of the
    3-sphere; its geodesic curvature inside the sphere is cot(a)."""

    def __init__(self, a: float, tau: float = math.pi / 4):
        if not 0.0 < a < math.pi / 2:
            raise ValueError(f"latitude angle must lie in (0, pi/2), got {a}")
        super().__init__(base_dim=1, ambient_dim=4, tau_value=tau)
        self.a = a

    def _angle(self, x) -> float:
        return float(np.atleast_1d(x)[0]) / math.sin(self.a)

    def base(self, x):
        th = self._angle(x)
        sa = math.sin(self.a)
        return np.array([sa * math.cos(th), sa * math.sin(th), math.cos(self.a), 0.0])

    def normal_frame(self, x):
        th = self._angle(x)
        ca = math.cos(self.a)
        nu1 = np.array([-ca * math.cos(th), -ca * math.sin(th), math.sin(self.a), 0.0])
        nu2 = np.array([0.0, 0.0, 0.0, 1.0])
        return np.vstack([nu1, nu2])

    def shape_operator(self, x, w_ambient):
        # <A_w T, T> = <curvature vector, w>; the curvature vector is cot(a) nu1.
        nu1 = self.normal_frame(x)[0]
        cot = math.cos(self.a) / math.sin(self.a)
        return np.array([[cot * float(w_ambient @ nu1)]])


class SphereBasePatch(TubePatch):
    """Totally geodesic d-sphere inside a larger sphere, with an (ell)-sphere
    fiber of constant normals."""

    def __init__(self, ell: int = 2, d: int = 2, tau: float = math.pi / 4):
        if ell < 1 or d < 1:
            raise ValueError("fiber and base dimensions must be positive")
        super().__init__(base_dim=d, ambient_dim=d + ell + 2, tau_value=tau)
        self.ell = ell

    def base(self, x):
        out = np.zeros(self.ambient_dim)
        out[: self.base_dim + 1] = _sphere_chart(x)
        return out

    def normal_frame(self, x):
        frame = np.zeros((self.ell + 1, self.ambient_dim))
        for i in range(self.ell + 1):
            frame[i, self.base_dim + 1 + i] = 1.0
        return frame

    def shape_operator(self, x, w_ambient):
        return np.zeros((self.base_dim, self.base_dim))


# ---------------------------------------------------------------------------
# Immersions carrying a designated Dupin normal, and the focal map


@dataclass(frozen=True)
class DupinPatch:
    """Immersion evaluator with a designated umbilic-like normal field.

    ``leaf_dims`` are the chart coordinates spanning the umbilic eigenspace.
    """

    point: Callable[[np.ndarray], np.ndarray]
    dupin_normal: Callable[[np.ndarray], np.ndarray]
    dim: int
    leaf_dims: tuple[int, ...] = ()


def torus_dupin_patch(n: int = 4, p: int = 2, r: float = math.sqrt(0.5)) -> DupinPatch:
    """Product of spheres with the umbilic normal of its first factor; the
    focal map collapses the first factor onto the opposite-factor sphere."""
    s = math.sqrt(1.0 - r * r)

    def point(x):
        x = np.asarray(x, dtype=float)
        return np.concatenate([r * _sphere_chart(x[: p]), s * _sphere_chart(x[p:])])

    def normal(x):
        x = np.asarray(x, dtype=float)
        xi = np.concatenate([-s * _sphere_chart(x[: p]), r * _sphere_chart(x[p:])])
        return (s / r) * xi

    return DupinPatch(point=point, dupin_normal=normal, dim=n, leaf_dims=tuple(range(p)))


def sphere_dupin_patch(dim: int = 2, a: float = math.pi / 3) -> DupinPatch:
    """Umbilical small sphere of latitude a: every direction is umbilic and
    the focal map is constant."""

    def point(x):
        chart = _sphere_chart(x)
        return np.concatenate([math.sin(a) * chart, [math.cos(a)]])

    def normal(x):
        chart = _sphere_chart(x)
        xi = np.concatenate([-math.cos(a) * chart, [math.sin(a)]])
        cot = math.cos(a) / math.sin(a)
        return cot * xi

    return DupinPatch(point=point, dupin_normal=normal, dim=dim, leaf_dims=tuple(range(dim)))


def tube_dupin_patch(patch: TubePatch, fiber_chart_dim: int | None = None) -> DupinPatch:
    """The tube itself as an immersion with Dupin normal cot(tau) N.

    Chart: base coordinates followed by angle coordinates of the fiber
    sphere; only constant-radius patches produce a genuine Dupin field.
    """
    nu = patch.fiber_dim
    fdim = nu - 1 if fiber_chart_dim is None else fiber_chart_dim

    def to_point(x):
        x = np.asarray(x, dtype=float)
        return TubePoint(x[: patch.base_dim], _sphere_chart(x[patch.base_dim:]))

    def point(x):
        return tube_point(patch, to_point(x))

    def normal(x):
        q = to_point(x)
        t = patch.tau(q.x)
        return (math.cos(t) / math.sin(t)) * tube_gauss(patch, q)

    return DupinPatch(
        point=point,
        dupin_normal=normal,
        dim=patch.base_dim + fdim,
        leaf_dims=tuple(range(patch.base_dim, patch.base_dim + fdim)),
    )


class FocalMap:
    """h = cos(sigma) f + sin(sigma) eta/|eta| with cot(sigma) = |eta|.

    Constant along the umbilic leaves; its image is the base of the tube
    decomposition.
    """

    def __init__(self, patch: DupinPatch, sigma: float):
        if not 0.0 < sigma < math.pi / 2:
            raise ValueError(f"sigma must lie in (0, pi/2), got {sigma}")
        self.patch = patch
        self.sigma = sigma

    def __call__(self, x: np.ndarray) -> np.ndarray:
        eta = self.patch.dupin_normal(np.asarray(x, dtype=float))
        xi = eta / np.linalg.norm(eta)
        return math.cos(self.sigma) * self.patch.point(np.asarray(x, dtype=float)) + math.sin(
            self.sigma
        ) * xi

    def jacobian(self, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        cols = []
        for i in range(self.patch.dim):
            e = np.zeros(self.patch.dim)
            e[i] = 1.0
            cols.append(central_diff(lambda t: self(x + t * e), h))
        return np.column_stack(cols)

    def leaf_derivative_norms(self, x: np.ndarray) -> list[float]:
        jac = self.jacobian(x)
        return [float(np.linalg.norm(jac[:, i])) for i in self.patch.leaf_dims]


def focal_map(patch: DupinPatch, sigma: float) -> FocalMap:
    """Focal map of an immersion along its designated Dupin normal."""
    return FocalMap(patch, sigma)


def generic_check(s: ShapeOperatorSet, normal: np.ndarray) -> bool:
    """True when the joint umbilic eigenspace of the normal vector equals the
    full eigenspace of the shape operator along its direction.

    Always true in codimension one.
    """
    normal = np.asarray(normal, dtype=float)
    norm = float(np.linalg.norm(normal))
    if norm == 0.0:
        raise ValueError("the normal vector must be nonzero")
    joint = joint_eigenspace(s, normal)
    a_xi = np.einsum("a,aij->ij", normal / norm, s.operators)
    xi_set = ShapeOperatorSet(a_xi[None, :, :])
    directional = joint_eigenspace(xi_set, np.array([norm]))
    return joint.shape[1] == directional.shape[1]


def small_circle_crossing(
    tau: float, halfwidth: float = 0.2, grid: int = 801
) -> tuple[float, float]:
    """Latitude at which the tube over a small circle loses regularity.

    Returns (root of det P, argmin of the smallest singular value of the
    finite-difference Jacobian) over the family of latitudes a near tau; the
    two coincide where the fiber direction -nu1 gives A_w eigenvalue -cot(a).
    """
    lo, hi = max(tau - halfwidth, 1e-3), min(tau + halfwidth, math.pi / 2 - 1e-3)

    def detp(a: float) -> float:
        patch = SmallCirclePatch(a=a, tau=tau)
        q = TubePoint(np.zeros(1), np.array([-1.0, 0.0]))
        return float(np.linalg.det(regularity_endomorphism(patch, q)))

    flo, fhi = detp(lo), detp(hi)
    if flo * fhi > 0:
        raise ValueError("det P does not change sign on the given latitude range")
    a_lo, a_hi = lo, hi
    for _ in range(80):
        mid = 0.5 * (a_lo + a_hi)
        if detp(mid) * flo > 0:
            a_lo = mid
        else:
            a_hi = mid
    det_root = 0.5 * (a_lo + a_hi)

    best_a, best_sv = lo, math.inf
    for a in np.linspace(lo, hi, grid):
        patch = SmallCirclePatch(a=float(a), tau=tau)
        q = TubePoint(np.zeros(1), np.array([-1.0, 0.0]))
        sv = np.linalg.svd(tube_jacobian(patch, q), compute_uv=False)[-1]
        if sv < best_sv:
            best_a, best_sv = float(a), float(sv)
    return det_root, best_a


BUILTIN_PATCHES = ("great-circle-s3", "small-circle", "clifford-torus", "sphere-base")


def build_patch(name: str, tau: float, params: dict | None = None) -> TubePatch:
    """Construct a built-in tube patch by name."""
    params = dict(params or {})
    if name == "great-circle-s3":
        return GreatCirclePatch(tau=tau)
    if name == "small-circle":
        return SmallCirclePatch(a=float(params.get("a", tau)), tau=tau)
    if name == "sphere-base":
        return SphereBasePatch(
            ell=int(params.get("ell", 2)), d=int(params.get("d", 2)), tau=tau
        )
    if name == "clifford-torus":
        raise ValueError(
            "clifford-torus is an immersion patch for the focal map; use the"
            " focal-roundtrip or focal-rank checks"
        )
    raise ValueError(f"unknown patch {name!r}; available: {', '.join(BUILTIN_PATCHES)}")
