"""Numerical verification of surface-theoretic quantities.

First-order data is exact: on a conformal chart the surface satisfies
X_z = M(w) X with the same coefficient matrix that drives the frame, so Xu
and Xv come from one matrix product instead of finite differences.  Only the
derivatives of the Gauss map (second-order data) are differenced, with one
Richardson extrapolation level; this keeps noise out of the H ~ 0 checks.

A chart-free finite-difference oracle (mean_curvature_fd) covers surfaces
given as plain (u, v) -> Herm2 callables in arbitrary, possibly
non-conformal, parametrizations; it is the independent cross-check for the
exact route and the only route for the extension chart of the non-rotational
example, whose parameter lines are not conformal.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bjorling import WeierstrassData
from .errors import DegenerateInputError, DegenerateMetricError, IntegrationError
from .frame import SurfaceGrid, _resolve_threads, coefficient_matrix, integrate_frame
from .lorentz import F3, Vec4, herm_to_vec, hermitize, minkowski_inner, vec_to_herm

__all__ = [
    "PointDiagnostics", "tangent_vectors", "gauss_map", "gauss_residuals",
    "second_fundamental", "curvatures", "point_diagnostics", "local_surface_sampler",
    "grid_diagnostics", "chartfree_grid_diagnostics", "mean_curvature_fd",
]

DEFAULT_H_REL = 1e-4       # Gauss-map difference step, relative to grid spacing
PHI2_FLOOR = 1e-12


def tangent_vectors(wd: WeierstrassData, x: np.ndarray, w: complex):
    """Exact (Xu, Xv) at a surface point from X_z = M(w) X.

    Both outputs are Hermitian by construction (A + A* and i(A - A*)).
    """
    m = coefficient_matrix(wd, w)
    mx = m @ x
    mxs = mx.conj().T
    return mx + mxs, 1j * (mx - mxs)


def gauss_map(x: np.ndarray, xu: np.ndarray, xv: np.ndarray) -> np.ndarray:
    """The unique lightlike n with <n,Xu> = <n,Xv> = <n,n> = 0, <n,X> = 1.

    Solves the three linear conditions for a particular Y (the solution set
    is Y + span{X} since X is orthogonal to everything involved), then kills
    <Y,Y> with n = Y - (<Y,Y>/2) X; the result is independent of the choice
    of Y.
    """
    rows = []
    rhs = [0.0, 0.0, 1.0]
    for m in (xu, xv, x):
        t, a, b, c = herm_to_vec(hermitize(m))
        rows.append([-t, a, b, c])
    system = np.array(rows)
    y, _, rank, _ = np.linalg.lstsq(system, np.array(rhs), rcond=None)
    if rank < 3:
        raise DegenerateInputError("tangent plane is degenerate; Gauss map undefined")
    yy = -y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]
    xvec = np.array(herm_to_vec(hermitize(x)))
    n = y - 0.5 * yy * xvec
    return vec_to_herm(Vec4(*n))


def gauss_residuals(x, xu, xv, n) -> np.ndarray:
    """[|<n,n>|, |<n,Xu>|, |<n,Xv>|, |<n,X> - 1|]."""
    return np.array([abs(minkowski_inner(n, n)),
                     abs(minkowski_inner(n, xu)),
                     abs(minkowski_inner(n, xv)),
                     abs(minkowski_inner(n, x) - 1.0)])


def local_surface_sampler(wd: WeierstrassData, f0: np.ndarray, w0: complex,
                          eps_loc: float = 1e-10, h_max: float = 1.0 / 64):
    """w -> X(w) in a neighborhood of w0, by short frame integrations from f0."""
    def x_at(w: complex) -> np.ndarray:
        f = integrate_frame(wd, f0, [w0, w], eps_loc=eps_loc, h_max=h_max)
        return hermitize(f @ F3 @ f.conj().T)
    return x_at


def _gauss_at(wd, x_at, w):
    x = x_at(w)
    xu, xv = tangent_vectors(wd, x, w)
    return gauss_map(x, xu, xv)


def second_fundamental(wd: WeierstrassData, x_at, w: complex, h: float):
    """(Lff, Mff, Nff, imag_max, symmetry_gap) at w.

    Gauss-map derivatives by central differences at spacing h with one
    Richardson level; Xu, Xv stay exact.  imag_max reports how far the
    coefficients are from real, symmetry_gap compares the two mixed
    coefficients -<Xu, n_v> and -<Xv, n_u>.
    """
    x = x_at(w)
    xu, xv = tangent_vectors(wd, x, w)

    def forms(step):
        nu = (_gauss_at(wd, x_at, w + step) - _gauss_at(wd, x_at, w - step)) / (2 * step)
        nv = (_gauss_at(wd, x_at, w + 1j * step) - _gauss_at(wd, x_at, w - 1j * step)) / (2 * step)
        lff = -minkowski_inner(xu, nu)
        m_uv = -minkowski_inner(xu, nv)
        m_vu = -minkowski_inner(xv, nu)
        nff = -minkowski_inner(xv, nv)
        return np.array([lff, 0.5 * (m_uv + m_vu), nff, m_uv - m_vu])

    coarse = forms(h)
    fine = forms(0.5 * h)
    lff, mff, nff, sym = (4.0 * fine - coarse) / 3.0
    imag_max = float(max(abs(lff.imag), abs(mff.imag), abs(nff.imag)))
    return lff.real, mff.real, nff.real, imag_max, abs(sym)


def curvatures(phi2: float, lff: float, mff: float, nff: float,
               tol: float = PHI2_FLOOR):
    """H = (L+N)/(2 phi^2), K = (LN - M^2)/phi^4 in a conformal chart."""
    if not phi2 > tol:
        raise DegenerateMetricError(f"conformal factor too small: phi^2 = {phi2:.3e}")
    return (lff + nff) / (2.0 * phi2), (lff * nff - mff * mff) / (phi2 * phi2)


@dataclass
class PointDiagnostics:
    phi2: float
    conformality_defect: float
    gauss: np.ndarray            # the lightlike Gauss map, Herm2
    lff: float
    mff: float
    nff: float
    H: float
    K: float
    residuals: dict[str, float] = field(default_factory=dict)


def point_diagnostics(wd: WeierstrassData, x_at, w: complex, h: float) -> PointDiagnostics:
    x = x_at(w)
    xu, xv = tangent_vectors(wd, x, w)
    e_uu = minkowski_inner(xu, xu).real
    e_vv = minkowski_inner(xv, xv).real
    e_uv = minkowski_inner(xu, xv).real
    phi2 = 0.5 * (e_uu + e_vv)
    defect = max(abs(e_uu - e_vv), 2.0 * abs(e_uv))
    n = gauss_map(x, xu, xv)
    gres = gauss_residuals(x, xu, xv, n)
    lff, mff, nff, imag_max, sym = second_fundamental(wd, x_at, w, h)
    h_mean, k_gauss = curvatures(phi2, lff, mff, nff)
    residuals = {
        "gauss": float(np.max(gres)),
        "lightlike": float(abs(minkowski_inner(x, x))),
        "second_form_imag": imag_max,
        "mixed_symmetry": float(sym),
    }
    return PointDiagnostics(phi2, defect, n, lff, mff, nff, h_mean, k_gauss, residuals)


def grid_diagnostics(grid: SurfaceGrid, wd: WeierstrassData | None = None,
                     x_at_factory=None, h: float | None = None,
                     threads: int | None = None) -> SurfaceGrid:
    """Fill the per-node diagnostics slots of a grid, in place.

    By default each node is sampled by short frame integrations from its own
    stored frame; closed-form grids pass x_at_factory(iu, iv) -> callable
    instead (their F slots are empty).  Nodes where the metric degenerates
    keep NaN curvatures but stay valid.
    """
    if wd is None:
        wd = grid.wd
    if wd is None:
        raise ValueError("grid carries no Weierstrass data; pass wd explicitly")
    if h is None:
        du = abs(grid.u[1] - grid.u[0]) if grid.n_u > 1 else 1.0
        dv = abs(grid.v[1] - grid.v[0]) if grid.n_v > 1 else 1.0
        h = DEFAULT_H_REL * min(du, dv)

    def run_node(idx):
        iv, iu = idx
        w = complex(grid.u[iu], grid.v[iv])
        if x_at_factory is not None:
            x_at = x_at_factory(iu, iv)
        else:
            x_at = local_surface_sampler(wd, grid.F[iv, iu], w)
        try:
            return point_diagnostics(wd, x_at, w, h)
        except (IntegrationError, DegenerateInputError, DegenerateMetricError):
            return None

    indices = [(iv, iu) for iv in range(grid.n_v) for iu in range(grid.n_u)
               if grid.valid[iv, iu]]
    n_threads = _resolve_threads(threads)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(run_node, indices))
    else:
        results = [run_node(idx) for idx in indices]

    for (iv, iu), pd in zip(indices, results):
        if pd is None:
            continue
        grid.phi2[iv, iu] = pd.phi2
        grid.H[iv, iu] = pd.H
        grid.K[iv, iu] = pd.K
        grid.conformality_defect[iv, iu] = pd.conformality_defect
        grid.gauss_residual[iv, iu] = pd.residuals["gauss"]
        grid.lightlike_residual[iv, iu] = pd.residuals["lightlike"]
        grid.second_form_imag[iv, iu] = pd.residuals["second_form_imag"]
    return grid


# ---------------------------------------------------------------------------
# chart-free finite-difference oracle

def _fd_gauss(surface, u, v, h):
    x = surface(u, v)
    xu = (surface(u + h, v) - surface(u - h, v)) / (2 * h)
    xv = (surface(u, v + h) - surface(u, v - h)) / (2 * h)
    return x, xu, xv, gauss_map(x, xu, xv)


def mean_curvature_fd(surface, u: float, v: float, h: float = 1e-3):
    """(H, K) of an arbitrarily parametrized surface patch in Q3+.

    surface: (u, v) -> Herm2.  Everything is central finite differences with
    one Richardson level; the shape operator is I^{-1} II, which needs no
    conformality of the parameter lines.
    """
    def once(step):
        x, xu, xv, _ = _fd_gauss(surface, u, v, step)
        n_pu = _fd_gauss(surface, u + step, v, step)[3]
        n_mu = _fd_gauss(surface, u - step, v, step)[3]
        n_pv = _fd_gauss(surface, u, v + step, step)[3]
        n_mv = _fd_gauss(surface, u, v - step, step)[3]
        nu = (n_pu - n_mu) / (2 * step)
        nv = (n_pv - n_mv) / (2 * step)
        e = minkowski_inner(xu, xu).real
        f = minkowski_inner(xu, xv).real
        g = minkowski_inner(xv, xv).real
        det_i = e * g - f * f
        if not abs(det_i) > PHI2_FLOOR:
            raise DegenerateMetricError(f"first fundamental form singular: det = {det_i:.3e}")
        lff = -minkowski_inner(xu, nu).real
        mff = -0.5 * (minkowski_inner(xu, nv) + minkowski_inner(xv, nu)).real
        nff = -minkowski_inner(xv, nv).real
        h_mean = (e * nff - 2.0 * f * mff + g * lff) / (2.0 * det_i)
        k_gauss = (lff * nff - mff * mff) / det_i
        return h_mean, k_gauss

    h1, k1 = once(h)
    h2, k2 = once(0.5 * h)
    return (4.0 * h2 - h1) / 3.0, (4.0 * k2 - k1) / 3.0


def chartfree_grid_diagnostics(surface, u_nodes, v_nodes, h: float = 1e-3) -> SurfaceGrid:
    """Evaluate a closed-form surface on a lattice with FD-oracle curvatures.

    Returns a SurfaceGrid with empty frame slots; phi2 holds <Xu,Xu> and the
    conformality defect is reported relative to the actual parametrization
    (it need not vanish).  Degenerate-metric nodes keep NaN curvatures.
    """
    u_nodes = np.asarray(u_nodes, dtype=float)
    v_nodes = np.asarray(v_nodes, dtype=float)
    n_u, n_v = len(u_nodes), len(v_nodes)
    x_grid = np.full((n_v, n_u, 2, 2), np.nan, dtype=complex)
    grid = SurfaceGrid(u=u_nodes, v=v_nodes,
                       F=np.full((n_v, n_u, 2, 2), np.nan, dtype=complex),
                       X=x_grid, valid=np.ones((n_v, n_u), dtype=bool),
                       det_drift=np.full((n_v, n_u), np.nan), wd=None)
    for iv, vv in enumerate(v_nodes):
        for iu, uu in enumerate(u_nodes):
            uu, vv = float(uu), float(vv)
            x = surface(uu, vv)
            xu = (surface(uu + h, vv) - surface(uu - h, vv)) / (2 * h)
            xv = (surface(uu, vv + h) - surface(uu, vv - h)) / (2 * h)
            x_grid[iv, iu] = x
            grid.phi2[iv, iu] = minkowski_inner(xu, xu).real
            grid.conformality_defect[iv, iu] = max(
                abs((minkowski_inner(xu, xu) - minkowski_inner(xv, xv)).real),
                2.0 * abs(minkowski_inner(xu, xv).real))
            grid.lightlike_residual[iv, iu] = float(abs(minkowski_inner(x, x)))
            try:
                n = gauss_map(x, xu, xv)
                grid.gauss_residual[iv, iu] = float(np.max(gauss_residuals(x, xu, xv, n)))
                h_mean, k_gauss = mean_curvature_fd(surface, uu, vv, h)
            except (DegenerateInputError, DegenerateMetricError):
                continue
            grid.H[iv, iu] = h_mean
            grid.K[iv, iu] = k_gauss
    return grid
