"""Moving-frame integration and surface assembly.

The frame F solves dF = M(w) F dw with

    M(w) = [[G, -G^2], [1, -G]] * omega(w),

and the surface is X = F f3 F*.  M is trace free and rank one, so det F is
constant along any path; |det F - 1| is tracked as the integrator's primary
accuracy sentinel and is never silently repaired (an explicit renormalization
flag exists for experiments).

Grids are integrated deterministically: a sweep along the real axis from the
middle u-node, then each column vertically.  Columns are independent given
the axis sweep; LIGHTCONE_THREADS > 1 runs them in a thread pool with results
merged in index order.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bjorling import BjorlingData, WeierstrassData, weierstrass_from_bjorling
from .errors import EvalError, IntegrationError, StiffnessError
from .lorentz import F3, frame_from_point, hermitize

__all__ = [
    "EPS_LOC", "H_MAX", "GridSpec", "IntegrationStats", "SurfaceGrid",
    "coefficient_matrix", "ode_rhs", "integrate_frame", "solve_bjorling",
]

EPS_LOC = 1e-10   # local error budget per unit arclength
H_MAX = 1.0 / 64  # cap on the RK4 step
_H_MIN = 1e-12

Mat4 = tuple[complex, complex, complex, complex]  # (m11, m12, m21, m22)


def _coef(gfn, ofn, w: complex) -> Mat4:
    gv = gfn(w)
    om = ofn(w)
    m11 = gv * om
    return (m11, -(gv * m11), om, -m11)


def _mul(a: Mat4, b: Mat4) -> Mat4:
    a11, a12, a21, a22 = a
    b11, b12, b21, b22 = b
    return (a11 * b11 + a12 * b21, a11 * b12 + a12 * b22,
            a21 * b11 + a22 * b21, a21 * b12 + a22 * b22)


def _axpy(f: Mat4, k: Mat4, s: complex) -> Mat4:
    return (f[0] + s * k[0], f[1] + s * k[1], f[2] + s * k[2], f[3] + s * k[3])


def _finite(m: Mat4) -> bool:
    return all(cmath.isfinite(z) for z in m)


def coefficient_matrix(wd: WeierstrassData, w: complex) -> np.ndarray:
    """M(w) = [[G, -G^2], [1, -G]] omega(w) as a numpy matrix."""
    try:
        m = _coef(wd.G_fn, wd.omega_fn, w)
    except (ZeroDivisionError, ValueError, OverflowError) as exc:
        raise IntegrationError(f"coefficient evaluation failed: {exc}", w) from exc
    if not _finite(m):
        raise IntegrationError("coefficient matrix is not finite", w)
    return np.array([[m[0], m[1]], [m[2], m[3]]], dtype=complex)


def ode_rhs(wd: WeierstrassData, w: complex, f: np.ndarray) -> np.ndarray:
    """Right-hand side M(w) F.  The structure matrix [[G, -G*G], [1, -G]] is
    trace free and singular exactly (in floating point, not just in exact
    arithmetic); both are asserted on every call."""
    try:
        gv = wd.G_fn(w)
        om = wd.omega_fn(w)
    except (ZeroDivisionError, ValueError, OverflowError) as exc:
        raise IntegrationError(f"coefficient evaluation failed: {exc}", w) from exc
    assert gv + (-gv) == 0
    assert gv * (-gv) + gv * gv == 0
    m11 = gv * om
    m = np.array([[m11, -(gv * m11)], [om, -m11]], dtype=complex)
    if not _finite((m[0, 0], m[0, 1], m[1, 0], m[1, 1])):
        raise IntegrationError("coefficient matrix is not finite", w)
    return m @ np.asarray(f, dtype=complex)


@dataclass
class IntegrationStats:
    steps: int = 0
    rejected: int = 0
    max_det_drift: float = 0.0
    min_step: float = math.inf


def _det(f: Mat4) -> complex:
    return f[0] * f[3] - f[1] * f[2]


def _rk4(gfn, ofn, f: Mat4, w: complex, hc: complex) -> Mat4:
    m_a = _coef(gfn, ofn, w)
    m_b = _coef(gfn, ofn, w + 0.5 * hc)
    m_c = _coef(gfn, ofn, w + hc)
    k1 = _mul(m_a, f)
    k2 = _mul(m_b, _axpy(f, k1, 0.5 * hc))
    k3 = _mul(m_b, _axpy(f, k2, 0.5 * hc))
    k4 = _mul(m_c, _axpy(f, k3, hc))
    sixth = hc / 6.0
    return (f[0] + sixth * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            f[1] + sixth * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
            f[2] + sixth * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]),
            f[3] + sixth * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3]))


def integrate_frame(wd: WeierstrassData, f0: np.ndarray, path,
                    eps_loc: float = EPS_LOC, h_max: float = H_MAX,
                    renormalize_det: bool = False,
                    stats: IntegrationStats | None = None) -> np.ndarray:
    """Integrate dF = M(w) F dw along straight segments between waypoints.

    Classical RK4 with step doubling: each step of arclength h is accepted
    once the Richardson error estimate |F_(h/2x2) - F_h|/15 drops below
    eps_loc * h, halving h as needed.  Pole hits surface as IntegrationError
    carrying the offending w; h < 1e-12 raises StiffnessError.
    """
    gfn, ofn = wd.G_fn, wd.omega_fn
    f = (complex(f0[0, 0]), complex(f0[0, 1]), complex(f0[1, 0]), complex(f0[1, 1]))
    waypoints = [complex(p) for p in path]
    for w_a, w_b in zip(waypoints[:-1], waypoints[1:]):
        seg = w_b - w_a
        length = abs(seg)
        if length < _H_MIN:
            continue  # the frame moves by O(|M| 1e-12), below every budget here
        direction = seg / length
        s = 0.0
        h = min(h_max, length)
        # the final step is cut to the remainder; stop once the remainder is
        # ulp-sized so float cancellation cannot underflow the step control
        while s < length * (1.0 - 1e-14):
            h = min(h, length - s)
            w = w_a + direction * s
            while True:
                if h < _H_MIN:
                    raise StiffnessError("step size underflow", w)
                hc = direction * h
                try:
                    big = _rk4(gfn, ofn, f, w, hc)
                    half = _rk4(gfn, ofn, f, w, 0.5 * hc)
                    two = _rk4(gfn, ofn, half, w + 0.5 * hc, 0.5 * hc)
                except (ZeroDivisionError, ValueError, OverflowError) as exc:
                    raise IntegrationError(f"coefficient evaluation failed: {exc}", w) from exc
                if not (_finite(big) and _finite(two)):
                    raise IntegrationError("frame became non-finite", w)
                err = max(abs(two[0] - big[0]), abs(two[1] - big[1]),
                          abs(two[2] - big[2]), abs(two[3] - big[3])) / 15.0
                # the estimate cannot resolve below roundoff in the frame
                # entries; without the floor, short remainder steps on large
                # frames would reject forever
                budget = eps_loc * h + 4e-15 * max(1.0, abs(f[0]), abs(f[1]),
                                                   abs(f[2]), abs(f[3]))
                if err <= budget:
                    break
                h *= 0.5
                if stats is not None:
                    stats.rejected += 1
            f = two
            s += h
            if stats is not None:
                stats.steps += 1
                stats.min_step = min(stats.min_step, h)
            if err <= budget / 64.0:
                h = min(2.0 * h, h_max)
        drift = abs(_det(f) - 1.0)
        if stats is not None:
            stats.max_det_drift = max(stats.max_det_drift, drift)
        if renormalize_det:
            root = cmath.sqrt(_det(f))
            f = (f[0] / root, f[1] / root, f[2] / root, f[3] / root)
    return np.array([[f[0], f[1]], [f[2], f[3]]], dtype=complex)


@dataclass(frozen=True)
class GridSpec:
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    n_u: int
    n_v: int

    def __post_init__(self):
        if self.n_u < 2 or self.n_v < 2:
            raise ValueError("grid needs at least 2 nodes per axis")

    def u_nodes(self) -> np.ndarray:
        return np.linspace(self.u_range[0], self.u_range[1], self.n_u)

    def v_nodes(self) -> np.ndarray:
        return np.linspace(self.v_range[0], self.v_range[1], self.n_v)


@dataclass
class SurfaceGrid:
    """(u, v) lattice carrying the frame, the surface, and diagnostics slots.

    Arrays are indexed [iv, iu].  Diagnostics arrays start as NaN and are
    filled by lightcone.diagnostics.grid_diagnostics.
    """

    u: np.ndarray
    v: np.ndarray
    F: np.ndarray            # (n_v, n_u, 2, 2) complex, NaN where invalid
    X: np.ndarray            # (n_v, n_u, 2, 2) complex Hermitian
    valid: np.ndarray        # (n_v, n_u) bool
    det_drift: np.ndarray    # |det F - 1|
    wd: WeierstrassData | None = None
    boundary_curve_residual: np.ndarray | None = None    # ||X(u,0) - gamma(u)||
    boundary_tangent_residual: np.ndarray | None = None  # ||X_v(u,0) - L(u)||
    phi2: np.ndarray = None
    H: np.ndarray = None
    K: np.ndarray = None
    conformality_defect: np.ndarray = None
    gauss_residual: np.ndarray = None
    lightlike_residual: np.ndarray = None
    second_form_imag: np.ndarray = None

    def __post_init__(self):
        shape = self.valid.shape
        for name in ("phi2", "H", "K", "conformality_defect",
                     "gauss_residual", "lightlike_residual", "second_form_imag"):
            if getattr(self, name) is None:
                setattr(self, name, np.full(shape, np.nan))

    @property
    def n_u(self) -> int:
        return len(self.u)

    @property
    def n_v(self) -> int:
        return len(self.v)


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    try:
        return max(1, int(os.environ.get("LIGHTCONE_THREADS", "1")))
    except ValueError:
        return 1


def solve_bjorling(data: BjorlingData, grid: GridSpec,
                   wd: WeierstrassData | None = None,
                   initial_twist: np.ndarray | None = None,
                   eps_loc: float = EPS_LOC, h_max: float = H_MAX,
                   renormalize_det: bool = False,
                   threads: int | None = None) -> SurfaceGrid:
    """Solve the boundary problem X(u,0) = gamma(u), X_v(u,0) = L(u) on a grid.

    The initial frame F(u0) comes from the rank-one factorization of
    gamma(u0) at the middle u-node; initial_twist right-multiplies it (the
    surface is invariant whenever the twist fixes f3, which is the gauge
    test).  Integration failures mark nodes invalid instead of aborting.
    """
    if wd is None:
        wd = weierstrass_from_bjorling(data)
    u_nodes = grid.u_nodes()
    v_nodes = grid.v_nodes()
    n_u, n_v = grid.n_u, grid.n_v
    f_grid = np.full((n_v, n_u, 2, 2), np.nan, dtype=complex)
    x_grid = np.full((n_v, n_u, 2, 2), np.nan, dtype=complex)
    valid = np.zeros((n_v, n_u), dtype=bool)
    drift = np.full((n_v, n_u), np.nan)

    i0 = n_u // 2
    gamma_mid = hermitize(data.gamma.eval(u_nodes[i0]))
    f_mid = frame_from_point(gamma_mid)
    if initial_twist is not None:
        f_mid = f_mid @ initial_twist

    # sweep along the real axis, outwards from the middle node
    f_axis: list[np.ndarray | None] = [None] * n_u
    f_axis[i0] = f_mid
    axis_ok = np.zeros(n_u, dtype=bool)
    axis_ok[i0] = True
    for step in (1, -1):
        f_cur = f_mid
        i = i0
        while 0 <= i + step < n_u:
            try:
                f_cur = integrate_frame(wd, f_cur, [u_nodes[i], u_nodes[i + step]],
                                        eps_loc=eps_loc, h_max=h_max,
                                        renormalize_det=renormalize_det)
            except IntegrationError:
                break
            i += step
            f_axis[i] = f_cur
            axis_ok[i] = True

    # boundary residuals along the seam
    curve_res = np.full(n_u, np.nan)
    tangent_res = np.full(n_u, np.nan)
    for i in range(n_u):
        if not axis_ok[i]:
            continue
        try:
            x_axis = hermitize(f_axis[i] @ F3 @ f_axis[i].conj().T)
            gamma_i = hermitize(data.gamma.eval(u_nodes[i]))
            curve_res[i] = float(np.max(np.abs(x_axis - gamma_i)))
            m = coefficient_matrix(wd, complex(u_nodes[i]))
            mx = m @ x_axis
            x_v = 1j * (mx - mx.conj().T)
            tangent_i = hermitize(data.tangent.eval(u_nodes[i]))
            tangent_res[i] = float(np.max(np.abs(x_v - tangent_i)))
        except (EvalError, IntegrationError):
            continue  # residual slots stay NaN at data poles

    # vertical columns (independent given the axis sweep)
    order = _column_order(v_nodes)

    def run_column(iu: int):
        col_f = [None] * n_v
        if not axis_ok[iu]:
            return col_f
        u_i = float(u_nodes[iu])
        for sweep in order:
            f_cur = f_axis[iu]
            v_prev = 0.0
            for iv in sweep:
                try:
                    f_cur = integrate_frame(
                        wd, f_cur, [complex(u_i, v_prev), complex(u_i, v_nodes[iv])],
                        eps_loc=eps_loc, h_max=h_max,
                        renormalize_det=renormalize_det)
                except IntegrationError:
                    break
                col_f[iv] = f_cur
                v_prev = float(v_nodes[iv])
        return col_f

    n_threads = _resolve_threads(threads)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            columns = list(pool.map(run_column, range(n_u)))
    else:
        columns = [run_column(iu) for iu in range(n_u)]

    for iu, col in enumerate(columns):
        for iv, f_node in enumerate(col):
            if f_node is None:
                continue
            f_grid[iv, iu] = f_node
            x_grid[iv, iu] = hermitize(f_node @ F3 @ f_node.conj().T)
            drift[iv, iu] = abs(f_node[0, 0] * f_node[1, 1]
                                - f_node[0, 1] * f_node[1, 0] - 1.0)
            valid[iv, iu] = True

    return SurfaceGrid(u=u_nodes, v=v_nodes, F=f_grid, X=x_grid, valid=valid,
                       det_drift=drift, wd=wd,
                       boundary_curve_residual=curve_res,
                       boundary_tangent_residual=tangent_res)


def _column_order(v_nodes: np.ndarray):
    """Split node indices into the two sweeps away from v = 0, in order."""
    up = [iv for iv in range(len(v_nodes)) if v_nodes[iv] >= 0]
    down = [iv for iv in range(len(v_nodes)) if v_nodes[iv] < 0]
    up.sort(key=lambda iv: v_nodes[iv])
    down.sort(key=lambda iv: -v_nodes[iv])
    return (up, down)
