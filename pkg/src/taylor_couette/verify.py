"""Residual and boundary-condition checks for the closed-form flows.

Two routes evaluate the cylindrical Navier-Stokes system: one plugs in the
analytic radial derivatives of the family profiles, the other applies
second-order central differences to any callable field. The boundary audits
and the Navier-slip identity use closed-form derivatives on the walls.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .errors import ConfigurationError, DomainError
from .flows import FamilyField, FlowSpec, boundary_vorticity_data, evaluate, radial_profiles
from .geometry import TWO_PI, Annulus, CylPoint, CylVector, peak_radius

EQUATIONS = ("rho", "theta", "z")

# (rho, theta, z) -> (u_rho, u_theta, u_z, p)
Field = Callable[[np.ndarray, np.ndarray, np.ndarray], tuple]


def default_step(a: Annulus) -> float:
    return 1e-4 * a.gap


def sample_interior_points(a: Annulus, n: int, seed: int = 0, z_extent: float | None = None):
    """Scrambled Halton points strictly inside the annulus, shape ``(n, 3)``.

    Columns are ``(rho, theta, z)`` with ``|z| <= z_extent`` (default: the gap).
    """
    if n < 1:
        raise ConfigurationError("need at least one sample point")
    if z_extent is None:
        z_extent = a.gap
    u = qmc.Halton(d=3, scramble=True, seed=seed).random(n)
    u = np.clip(u, 1e-9, 1.0 - 1e-9)
    rho = a.r_inner + a.gap * u[:, 0]
    theta = TWO_PI * u[:, 1]
    z = z_extent * (2.0 * u[:, 2] - 1.0)
    return np.column_stack([rho, theta, z])


def _as_point_array(points) -> np.ndarray:
    if isinstance(points, CylPoint):
        return points.as_array()[None, :]
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        return arr.reshape(-1, 3)
    pts = list(points)
    if pts and isinstance(pts[0], CylPoint):
        return np.array([p.as_array() for p in pts])
    return np.asarray(pts, dtype=float).reshape(-1, 3)


def snse_residual(rho, u, d_rho, d2_rho, d_theta, d2_theta, d_z, d2_z, grad_p):
    """Residuals of the steady cylindrical Navier-Stokes system.

    Each velocity argument is a triple ``(rho, theta, z)`` of arrays holding
    the component values or their partial derivatives; ``grad_p`` holds
    ``(dp/drho, dp/dtheta, dp/dz)``. Returns ``(momentum (..., 3), divergence)``
    with every equation written as left side minus right side.
    """
    ur, ut, uz = u
    r2 = rho * rho

    def transport(i):
        return u[0] * d_rho[i] + ut / rho * d_theta[i] + uz * d_z[i]

    def laplace(i):
        return d_rho[i] / rho + d2_rho[i] + d2_theta[i] / r2 + d2_z[i]

    e_rho = (laplace(0) - transport(0) + ut * ut / rho - ur / r2
             - 2.0 / r2 * d_theta[1] - grad_p[0])
    e_theta = (laplace(1) - transport(1) - ur * ut / rho - ut / r2
               + 2.0 / r2 * d_theta[0] - grad_p[1] / rho)
    e_z = laplace(2) - transport(2) - grad_p[2]
    div = d_rho[0] + ur / rho + d_theta[1] / rho + d_z[2]
    return np.stack([e_rho, e_theta, e_z], axis=-1), div


@dataclass
class ResidualReport:
    momentum_residual: np.ndarray
    divergence: np.ndarray
    sample_points: np.ndarray
    seed: int | None = None
    label: str = ""
    max_abs: float = field(init=False)

    def __post_init__(self):
        self.momentum_residual = np.atleast_2d(self.momentum_residual)
        self.divergence = np.atleast_1d(self.divergence)
        self.max_abs = float(max(np.max(np.abs(self.momentum_residual), initial=0.0),
                                 np.max(np.abs(self.divergence), initial=0.0)))

    @property
    def n_samples(self) -> int:
        return int(self.sample_points.shape[0])

    @property
    def per_equation_max(self) -> dict:
        out = {name: float(np.max(np.abs(self.momentum_residual[:, i]), initial=0.0))
               for i, name in enumerate(EQUATIONS)}
        out["continuity"] = float(np.max(np.abs(self.divergence), initial=0.0))
        return out

    def points(self) -> list[CylPoint]:
        return [CylPoint(*row) for row in self.sample_points]

    def to_dict(self) -> dict:
        d = {"max_abs": self.max_abs, "per_equation_max": self.per_equation_max,
             "n_samples": self.n_samples, "seed": self.seed}
        if self.label:
            d["label"] = self.label
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def ns_residual_closed(spec: FlowSpec, a: Annulus, points, *, seed: int | None = None) -> ResidualReport:
    """Residual of the exact family at interior points using analytic derivatives."""
    pts = _as_point_array(points)
    rho = a.check_radius(pts[:, 0], interior=True)
    pr = radial_profiles(spec, a, rho)
    zero = np.zeros_like(rho)
    u = (zero, pr.u_theta, pr.u_z)
    d_rho = (zero, pr.du_theta, pr.du_z)
    d2_rho = (zero, pr.d2u_theta, pr.d2u_z)
    flat = (zero, zero, zero)
    grad_p = (pr.dp_drho, zero, zero + pr.dp_dz)
    mom, div = snse_residual(rho, u, d_rho, d2_rho, flat, flat, flat, flat, grad_p)
    return ResidualReport(mom, div, pts, seed=seed, label=spec.family.value)


def ns_residual_fd(field: Field, point, h: float | None = None, annulus: Annulus | None = None):
    """Central-difference residual of a generic field at one or more points.

    The azimuthal step is ``h / rho`` so that all three directions use the
    same arc length. Returns ``(momentum, divergence)``; for a single
    :class:`CylPoint` the shapes are ``(3,)`` and ``()``.
    """
    single = isinstance(point, CylPoint)
    pts = _as_point_array(point)
    if h is None:
        if annulus is None:
            raise ConfigurationError("step h is required when no annulus is given")
        h = default_step(annulus)
    if not h > 0.0:
        raise ConfigurationError(f"step must be positive, got {h}")
    rho, theta, z = pts[:, 0], pts[:, 1], pts[:, 2]
    if annulus is not None:
        lo, hi = annulus.r_inner + 2.0 * h, annulus.r_outer - 2.0 * h
        if np.any(rho < lo) or np.any(rho > hi):
            raise DomainError(f"points need a wall margin of 2h = {2.0 * h:g}")
    elif np.any(rho <= 2.0 * h):
        raise DomainError("points too close to the axis for the chosen step")

    def ev(r, t, zz):
        out = field(r, t, zz)
        return [np.broadcast_to(np.asarray(c, dtype=float), r.shape) for c in out]

    c0 = ev(rho, theta, z)
    ht = h / rho
    rp, rm = ev(rho + h, theta, z), ev(rho - h, theta, z)
    tp, tm = ev(rho, theta + ht, z), ev(rho, theta - ht, z)
    zp, zm = ev(rho, theta, z + h), ev(rho, theta, z - h)

    def d1(p, m, step):
        return [(p[i] - m[i]) / (2.0 * step) for i in range(4)]

    def d2(p, m, step):
        return [(p[i] - 2.0 * c0[i] + m[i]) / (step * step) for i in range(4)]

    dr, dt, dz = d1(rp, rm, h), d1(tp, tm, ht), d1(zp, zm, h)
    ddr, ddt, ddz = d2(rp, rm, h), d2(tp, tm, ht), d2(zp, zm, h)
    mom, div = snse_residual(rho, c0[:3], dr[:3], ddr[:3], dt[:3], ddt[:3], dz[:3], ddz[:3],
                             (dr[3], dt[3], dz[3]))
    if single:
        return mom[0], float(div[0])
    return mom, div


def fd_residual_report(field: Field, a: Annulus, points, h: float | None = None,
                       *, seed: int | None = None, label: str = "") -> ResidualReport:
    pts = _as_point_array(points)
    mom, div = ns_residual_fd(field, pts, h, a)
    return ResidualReport(mom, div, pts, seed=seed, label=label)


# --- boundary audits --------------------------------------------------------

@dataclass
class BoundaryReport:
    """Largest violation of each boundary condition on each wall."""

    gamma1: dict
    gamma2: dict
    n_samples: int
    seed: int | None = None
    label: str = ""

    @property
    def max_abs(self) -> float:
        vals = list(self.gamma1.values()) + list(self.gamma2.values())
        return float(max(vals, default=0.0))

    @property
    def per_equation_max(self) -> dict:
        out = {f"gamma1.{k}": v for k, v in self.gamma1.items()}
        out.update({f"gamma2.{k}": v for k, v in self.gamma2.items()})
        return out

    def to_dict(self) -> dict:
        d = {"max_abs": self.max_abs, "per_equation_max": self.per_equation_max,
             "n_samples": self.n_samples, "seed": self.seed}
        if self.label:
            d["label"] = self.label
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _wall_samples(n: int, seed: int, z_extent: float):
    u = qmc.Halton(d=2, scramble=True, seed=seed).random(n)
    return TWO_PI * u[:, 0], z_extent * (2.0 * u[:, 1] - 1.0)


def _wall_velocity(spec: FlowSpec, a: Annulus, r: float, theta, z):
    f = evaluate(spec, a, np.full_like(theta, r), theta, z)
    return f.u_rho, f.u_theta, f.u_z


def boundary_check(spec: FlowSpec, a: Annulus, n_samples: int = 64, *, seed: int = 0) -> BoundaryReport:
    """Audit the boundary conditions of the family on sampled wall points."""
    if n_samples < 1:
        raise ConfigurationError("n_samples must be >= 1")
    theta, z = _wall_samples(n_samples, seed, a.gap)
    fam = spec.family
    walls = {"inner": a.r_inner, "outer": a.r_outer}
    reports = {}
    for name, r in walls.items():
        ur, ut, uz = _wall_velocity(spec, a, r, theta, z)
        checks = {}
        if name != fam.moving_wall:
            checks["u_rho"] = ur
            checks["u_theta"] = ut
            checks["u_z"] = uz
        elif not fam.is_vorticity:
            checks["u_rho"] = ur
            checks["u_theta"] = ut - spec.alpha
            checks["u_z"] = uz
        else:
            pr = radial_profiles(spec, a, np.full_like(theta, r))
            w_theta, w_z = boundary_vorticity_data(spec, a)
            checks["u_rho"] = ur
            checks["robin_u_theta"] = pr.u_theta / r + pr.du_theta - w_z
            checks["neumann_u_z"] = pr.du_z + w_theta
            # |(curl u - w) x e_rho| for curl and data without radial part
            curl_t, curl_z = -pr.du_z, pr.du_theta + pr.u_theta / r
            checks["curl_cross_nu"] = np.hypot(curl_z - w_z, curl_t - w_theta)
        reports[name] = {k: float(np.max(np.abs(v))) for k, v in checks.items()}
    return BoundaryReport(reports["inner"], reports["outer"], n_samples, seed, fam.value)


# --- Navier-slip identity ---------------------------------------------------

def _frame(theta):
    """Rows e_rho, e_theta, e_z in cartesian coordinates, shape (..., 3, 3)."""
    c, s = np.cos(theta), np.sin(theta)
    zero, one = np.zeros_like(c), np.ones_like(c)
    return np.stack([np.stack([c, s, zero], -1),
                     np.stack([-s, c, zero], -1),
                     np.stack([zero, zero, one], -1)], -2)


@dataclass
class NavierSlipResult:
    max_violation: float
    friction_coefficient: float
    friction_term: float
    wall: str
    normal: str
    n_samples: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def navier_slip_identity(spec: FlowSpec, a: Annulus, n_samples: int = 64, *,
                         wall: str | None = None, normal: str = "outward",
                         seed: int = 0, friction_sign: float | None = None) -> NavierSlipResult:
    """Check ``(curl u) x nu = 2 [D(u) nu]_tau + s (2/R) u_theta e_theta`` on a wall.

    ``normal="outward"`` uses the outward unit normal of the fluid domain
    (``-e_rho`` on the inner wall); ``normal="radial"`` uses ``+e_rho`` on both
    walls. The sign ``s = nu . e_rho`` of the curvature (friction) term follows
    the chosen orientation unless ``friction_sign`` overrides it. The
    strain-rate tensor is assembled in the cartesian frame from closed-form
    derivatives and projected on the tangent plane.
    """
    if normal not in ("outward", "radial"):
        raise ConfigurationError(f"normal must be 'outward' or 'radial', got {normal!r}")
    wall = wall or spec.family.moving_wall
    if wall not in ("inner", "outer"):
        raise ConfigurationError(f"wall must be 'inner' or 'outer', got {wall!r}")
    r = a.r_inner if wall == "inner" else a.r_outer
    theta, z = _wall_samples(n_samples, seed, a.gap)
    rho = np.full_like(theta, r)
    pr = radial_profiles(spec, a, rho)
    zero = np.zeros_like(rho)
    u_rho = zero
    if np.max(np.abs(u_rho)) > 0.0:
        raise DomainError(f"u . nu does not vanish on the {wall} wall")

    # velocity gradient L_ij = d u_i / d x_j in the local frame
    L = np.zeros(theta.shape + (3, 3))
    L[:, 0, 1] = -pr.u_theta / r
    L[:, 1, 0] = pr.du_theta
    L[:, 2, 0] = pr.du_z
    Q = _frame(theta)                       # rows: local basis in cartesian
    Lc = np.einsum("nai,nab,nbj->nij", Q, L, Q)
    D = 0.5 * (Lc + np.swapaxes(Lc, 1, 2))
    curl = np.stack([Lc[:, 2, 1] - Lc[:, 1, 2],
                     Lc[:, 0, 2] - Lc[:, 2, 0],
                     Lc[:, 1, 0] - Lc[:, 0, 1]], -1)
    e_rho, e_theta = Q[:, 0, :], Q[:, 1, :]
    s = -1.0 if (normal == "outward" and wall == "inner") else 1.0
    nu = s * e_rho
    lhs = np.cross(curl, nu)
    Dn = np.einsum("nij,nj->ni", D, nu)
    Dn_tau = Dn - np.sum(Dn * nu, -1, keepdims=True) * nu
    u_c = pr.u_theta[:, None] * e_theta + pr.u_z[:, None] * Q[:, 2, :]
    u_tau = u_c - np.sum(u_c * nu, -1, keepdims=True) * nu
    friction = (2.0 / r) * np.sum(u_tau * e_theta, -1, keepdims=True) * e_theta
    sign = s if friction_sign is None else float(friction_sign)
    rhs = 2.0 * Dn_tau + sign * friction
    viol = float(np.max(np.abs(lhs - rhs)))
    coeff = 2.0 / r
    return NavierSlipResult(viol, coeff, float(np.max(np.abs(coeff * pr.u_theta))),
                            wall, normal, n_samples)


# --- curl-free counterexample ----------------------------------------------

def counterexample_field(p: CylPoint) -> CylVector:
    """Planar field ``(y e1 - x e2)/(x^2 + y^2)``: divergence- and curl-free."""
    if p.rho <= 0.0:
        raise DomainError("counterexample field is singular on the axis")
    return CylVector(0.0, -1.0 / p.rho, 0.0)


def counterexample_cartesian(x, y, z):
    r2 = x * x + y * y
    return y / r2, -x / r2, np.zeros_like(np.asarray(x, dtype=float) + z)


def fd_div_curl_cartesian(field_cart, xyz: np.ndarray, h: float):
    """Central-difference divergence and curl of a cartesian field at ``xyz`` (n, 3)."""
    xyz = np.atleast_2d(xyz)
    J = np.empty((xyz.shape[0], 3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        fp = np.stack(field_cart(*(xyz + step).T), -1)
        fm = np.stack(field_cart(*(xyz - step).T), -1)
        J[:, :, j] = (fp - fm) / (2.0 * h)
    div = J[:, 0, 0] + J[:, 1, 1] + J[:, 2, 2]
    curl = np.stack([J[:, 2, 1] - J[:, 1, 2], J[:, 0, 2] - J[:, 2, 0],
                     J[:, 1, 0] - J[:, 0, 1]], -1)
    return div, curl


def counterexample_checks(a: Annulus, n: int = 1000, h: float | None = None, seed: int = 0) -> dict:
    """Divergence, curl and wall flux of the counterexample field."""
    if h is None:
        h = 1e-5 * a.gap
    pts = sample_interior_points(a, n, seed)
    rho = np.clip(pts[:, 0], a.r_inner + 2 * h, a.r_outer - 2 * h)
    xyz = np.column_stack([rho * np.cos(pts[:, 1]), rho * np.sin(pts[:, 1]), pts[:, 2]])
    div, curl = fd_div_curl_cartesian(counterexample_cartesian, xyz, h)
    flux = 0.0
    theta, zw = _wall_samples(n, seed, a.gap)
    for r, sign in ((a.r_inner, -1.0), (a.r_outer, 1.0)):
        x, y = r * np.cos(theta), r * np.sin(theta)
        ux, uy, uz = counterexample_cartesian(x, y, zw)
        flux = max(flux, float(np.max(np.abs(sign * (ux * x + uy * y) / r))))
    r0 = peak_radius(a)
    return {"max_abs_divergence": float(np.max(np.abs(div))),
            "max_abs_curl": float(np.max(np.abs(curl))),
            "max_abs_wall_flux": flux,
            "norm_at_peak_radius": counterexample_field(CylPoint(r0, 0.0, 0.0)).norm(),
            "n_samples": n, "h": h, "seed": seed}


# --- perturbed fields for negative checks ----------------------------------

class PerturbedField:
    """Family field plus a smooth, seeded lattice of Fourier modes in velocity."""

    def __init__(self, base: Field, amplitude: float, seed: int = 0, n_modes: int = 6,
                 length: float = 1.0):
        rng = np.random.default_rng(seed)
        self.base = base
        self.amplitude = float(amplitude)
        self.k_rho = rng.integers(1, 4, size=(3, n_modes)) * math.pi / length
        self.k_theta = rng.integers(0, 3, size=(3, n_modes))
        self.k_z = rng.integers(1, 4, size=(3, n_modes)) * math.pi / length
        self.phase = rng.uniform(0.0, TWO_PI, size=(3, n_modes))
        self.weight = rng.normal(size=(3, n_modes)) / n_modes

    def __call__(self, rho, theta, z):
        ur, ut, uz, p = self.base(rho, theta, z)
        out = [np.asarray(ur, float), np.asarray(ut, float), np.asarray(uz, float)]
        for i in range(3):
            arg = (self.k_rho[i][:, None] * np.ravel(rho)[None, :]
                   + self.k_theta[i][:, None] * np.ravel(theta)[None, :]
                   + self.k_z[i][:, None] * np.ravel(z)[None, :] + self.phase[i][:, None])
            bump = (self.weight[i][:, None] * np.sin(arg)).sum(0).reshape(np.shape(rho))
            out[i] = out[i] + self.amplitude * bump
        return out[0], out[1], out[2], p


def family_field(spec: FlowSpec, a: Annulus) -> FamilyField:
    return FamilyField(spec, a)
