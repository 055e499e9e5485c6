"""Two-point boundary-value solves for the axial profile and the
Sturm-Liouville scan along the imaginary axis."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, solve_banded, svdvals

from .errors import ConfigurationError, SolverError
from .flows import poiseuille_vorticity
from .geometry import Annulus


@dataclass(frozen=True)
class Grid1D:
    annulus: Annulus
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8:
            raise ConfigurationError(f"grid needs n >= 8 nodes, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.annulus.r_inner, self.annulus.r_outer, self.n)

    @property
    def h(self) -> float:
        return self.annulus.gap / (self.n - 1)


@dataclass
class BVPResult:
    nodes: np.ndarray
    values: np.ndarray
    exact: np.ndarray

    @property
    def max_error(self) -> float:
        return float(np.max(np.abs(self.values - self.exact)))


def uz_dirichlet_exact(a: Annulus, beta: float, rho):
    r1 = a.r_inner
    rho = np.asarray(rho, dtype=float)
    return 0.25 * beta * (rho**2 - r1**2 - a.sq_diff / a.log_ratio * np.log(rho / r1))


def uz_robin_exact(a: Annulus, beta: float, gamma: float, rho):
    r1, r2 = a.r_inner, a.r_outer
    rho = np.asarray(rho, dtype=float)
    lg = np.log(rho / r2)
    slide = beta * r1 * poiseuille_vorticity(a, r1)
    return -slide * lg + 0.25 * gamma * (rho**2 - r2**2 - 2.0 * r1**2 * lg)


def _radial_laplacian_rows(rho, h):
    """Sub-, main and super-diagonal of ``(1/rho)(rho u')'`` scaled by ``rho``.

    Row i reads ``(rho_{i+1/2}(u_{i+1}-u_i) - rho_{i-1/2}(u_i-u_{i-1})) / h^2``.
    """
    lo = (rho - 0.5 * h) / h**2
    up = (rho + 0.5 * h) / h**2
    return lo, -(lo + up), up


def _solve(ab, rhs, l_and_u):
    try:
        x = solve_banded(l_and_u, ab, rhs)
    except (LinAlgError, ValueError) as exc:
        raise SolverError(f"banded solve failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SolverError("singular tridiagonal system")
    return x


def solve_uz_dirichlet(a: Annulus, beta: float, grid: Grid1D) -> BVPResult:
    """Solve ``u'' + u'/rho = beta`` with ``u(R1) = u(R2) = 0``."""
    rho = grid.nodes
    h = grid.h
    ri = rho[1:-1]
    lo, mid, up = _radial_laplacian_rows(ri, h)
    m = ri.size
    ab = np.zeros((3, m))
    ab[0, 1:] = up[:-1]
    ab[1, :] = mid
    ab[2, :-1] = lo[1:]
    rhs = beta * ri
    u = np.zeros_like(rho)
    u[1:-1] = _solve(ab, rhs, (1, 1))
    return BVPResult(rho, u, uz_dirichlet_exact(a, beta, rho))


def solve_uz_robin(a: Annulus, beta: float, gamma: float, grid: Grid1D) -> BVPResult:
    """Solve ``u'' + u'/rho = gamma`` with a Neumann condition on ``R1`` and
    ``u(R2) = 0``.

    The Neumann data is the vorticity of the unit Poiseuille profile on
    ``R1`` times ``-beta``, imposed with the one-sided stencil
    ``(-3u_0 + 4u_1 - u_2) / (2h)``.
    """
    rho = grid.nodes
    h = grid.h
    m = rho.size - 1                        # unknowns u_0 .. u_{n-2}
    flux = -beta * poiseuille_vorticity(a, a.r_inner)
    lo, mid, up = _radial_laplacian_rows(rho[1:m], h)
    # banded storage with 1 sub- and 2 super-diagonals
    ab = np.zeros((4, m))
    ab[2, 0], ab[1, 1], ab[0, 2] = -3.0 / (2.0 * h), 4.0 / (2.0 * h), -1.0 / (2.0 * h)
    ab[3, 0:m - 1] = lo                     # A[i, i-1] for rows 1..m-1
    ab[2, 1:m] = mid                        # A[i, i]
    ab[1, 2:m] = up[:-1]                    # A[i, i+1]; last one multiplies u(R2) = 0
    rhs = np.empty(m)
    rhs[0] = flux
    rhs[1:] = gamma * rho[1:m]
    u = np.zeros_like(rho)
    u[:m] = _solve(ab, rhs, (1, 2))
    return BVPResult(rho, u, uz_robin_exact(a, beta, gamma, rho))


# --- Sturm-Liouville scan -----------------------------------------------------

@dataclass
class SLScanResult:
    k: int
    alpha_grid: np.ndarray
    sigma_min: np.ndarray
    n: int

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(("k", "alpha", "sigma_min", "n"))
        for al, s in zip(self.alpha_grid, self.sigma_min):
            w.writerow((self.k, repr(float(al)), repr(float(s)), self.n))
        return buf.getvalue()


def sl_operator(a: Annulus, k: int, grid: Grid1D):
    """Real part ``T`` and weight ``w`` of the discrete operator ``T + i alpha diag(w)``.

    ``T`` discretizes ``(rho W')' - (k^2/rho) W`` on interior nodes with
    face-centred coefficients (symmetric); ``w`` is
    ``k R1 / (R2^2 - R1^2) * (rho - R2^2/rho)``.
    """
    nodes = grid.nodes
    rho = nodes[1:-1]
    h = grid.h
    # shared face values keep T exactly symmetric
    face = 0.5 * (nodes[:-1] + nodes[1:]) / h**2
    off = face[1:-1]
    T = np.diag(-(face[:-1] + face[1:]) - k * k / rho) + np.diag(off, 1) + np.diag(off, -1)
    w = k * a.r_inner / a.sq_diff * (rho - a.r_outer**2 / rho)
    return T, w


def sl_scan(a: Annulus, k: int, alpha_grid, grid: Grid1D, *, jobs: int = 1) -> SLScanResult:
    """Smallest singular value of the discrete operator at ``lambda = i alpha``."""
    if int(k) != k or k == 0:
        raise ConfigurationError(f"k must be a nonzero integer, got {k}")
    k = int(k)
    alphas = np.atleast_1d(np.asarray(alpha_grid, dtype=float))
    T, w = sl_operator(a, k, grid)

    def smallest(alpha):
        M = T + 1j * np.diag(alpha * w)
        try:
            return float(svdvals(M, check_finite=False)[-1])
        except LinAlgError as exc:
            raise SolverError(f"SVD failed at alpha={alpha}: {exc}") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            sig = list(pool.map(smallest, alphas))
    else:
        sig = [smallest(al) for al in alphas]
    return SLScanResult(k, alphas, np.array(sig), grid.n)
