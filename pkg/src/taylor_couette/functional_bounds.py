"""Poincare-constant bounds, Rayleigh quotients and their asymptotics.

The true infimum of the Rayleigh quotient over admissible fields is not
computed; only closed-form lower/upper bounds and quotients of supplied
fields are.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ConfigurationError, ConvergenceError, DomainError
from .geometry import TWO_PI, Annulus, frame_to_cartesian


@dataclass(frozen=True)
class BoundSet:
    lower_square: float
    lower_radial: float
    lower_best: float
    upper: float
    curl_factor: float
    lower_one_wall: float

    def to_dict(self) -> dict:
        return asdict(self)


def bound_set(a: Annulus) -> BoundSet:
    """Closed-form bounds of the Poincare constant of the annulus.

    ``lower_square`` and ``lower_radial`` hold for fields vanishing on both
    walls. ``lower_one_wall`` is the radial estimate for fields vanishing on a
    single wall: integrating ``d/drho`` from that wall only gives
    ``|v|^2 <= log(R2/R1) * int |dv/drho|^2 rho drho`` and hence
    ``2 / ((R2^2 - R1^2) log(R2/R1))``.
    """
    lsq = math.pi**2 / (2.0 * a.r_outer**2)
    lrad = 8.0 / (a.sq_diff * a.log_ratio)
    return BoundSet(
        lower_square=lsq,
        lower_radial=lrad,
        lower_best=max(lsq, lrad),
        upper=10.0 / a.gap**2,
        curl_factor=1.0 - a.log_ratio,
        lower_one_wall=2.0 / (a.sq_diff * a.log_ratio),
    )


# --- test field V_eps ---------------------------------------------------------

@dataclass(frozen=True)
class VEpsilonResult:
    eps: float
    numeric_quotient: float
    closed_form: float
    exact_quotient: float
    l2_norm_sq: float
    grad_norm_sq: float
    l2_norm_sq_closed: float
    grad_norm_sq_closed: float
    grad_norm_sq_exact: float

    def to_dict(self) -> dict:
        return asdict(self)


def _v_eps_closed(a: Annulus, eps: float):
    s, d = a.r_outer + a.r_inner, a.gap
    l2 = math.pi / (45.0 * eps) * s * d**5
    grad_quoted = 2.0 * math.pi / (9.0 * eps) * s * d**3 + math.pi * eps**2 / 15.0 * s * d**5
    # the axial-derivative part integrates eps^2 over |z| < 1/eps, i.e. a factor eps
    grad_exact = 2.0 * math.pi / (9.0 * eps) * s * d**3 + math.pi * eps / 15.0 * s * d**5
    return l2, grad_quoted, grad_exact


def _v_eps_quadrature(a: Annulus, eps: float, n_rho: int, n_z: int):
    r1, r2 = a.r_inner, a.r_outer
    dr = a.gap / n_rho
    rho = r1 + dr * (np.arange(n_rho) + 0.5)
    g = (r2 - rho) * (rho - r1)
    dg = r2 + r1 - 2.0 * rho
    # cells tile [0, 1/eps] so the kinks at z = 0 and z = 1/eps are cell faces
    dz = 1.0 / (eps * n_z)
    z = dz * (np.arange(n_z) + 0.5)
    wz = (1.0 - eps * z) ** 2
    # integrand is theta-independent, so the theta rule contributes 2*pi exactly
    vol = 2.0 * TWO_PI * dr * dz
    Iz = np.sum(wz)
    l2 = vol * Iz * np.sum(rho * g * g)
    grad = vol * (Iz * np.sum(rho * dg * dg) + eps * eps * n_z * np.sum(rho * g * g))
    return l2, grad


def v_epsilon_rayleigh(a: Annulus, eps: float, *, n_rho: int = 2048, n_z: int = 2048,
                       rtol: float = 1e-6) -> VEpsilonResult:
    """Rayleigh quotient of ``V = ((1 - eps|z|)^+ (R2 - rho)(rho - R1), 0, 0)``.

    The numeric value comes from a midpoint rule on a tensor grid.
    ``closed_form`` is ``3 eps^3 + 10/(R2 - R1)^2``; ``exact_quotient`` is the
    value the integrals actually give, ``3 eps^2 + 10/(R2 - R1)^2`` (the two
    agree at ``eps = 1``).
    """
    if not eps > 0.0:
        raise ConfigurationError(f"eps must be positive, got {eps}")
    l2, grad = _v_eps_quadrature(a, eps, n_rho, n_z)
    l2h, gradh = _v_eps_quadrature(a, eps, n_rho // 2, n_z // 2)
    q, qh = grad / l2, gradh / l2h
    # Richardson estimate for a second-order rule
    if abs(q - qh) / 3.0 > rtol * abs(q):
        raise ConvergenceError(f"quadrature error estimate {abs(q - qh) / 3:.2e} above rtol")
    l2c, gpc, gec = _v_eps_closed(a, eps)
    return VEpsilonResult(
        eps=eps,
        numeric_quotient=q,
        closed_form=3.0 * eps**3 + 10.0 / a.gap**2,
        exact_quotient=3.0 * eps**2 + 10.0 / a.gap**2,
        l2_norm_sq=l2,
        grad_norm_sq=grad,
        l2_norm_sq_closed=l2c,
        grad_norm_sq_closed=gpc,
        grad_norm_sq_exact=gec,
    )


def v_epsilon_field(a: Annulus, eps: float) -> Callable:
    """``V_eps`` as a cylindrical-component callable for :func:`discrete_rayleigh`."""
    r1, r2 = a.r_inner, a.r_outer

    def field(rho, theta, z):
        v = np.clip(1.0 - eps * np.abs(z), 0.0, None) * (r2 - rho) * (rho - r1)
        # cartesian (v, 0, 0) in the local frame
        return v * np.cos(theta), -v * np.sin(theta), np.zeros_like(v)

    return field


# --- generic discrete Rayleigh quotient ------------------------------------

def discrete_rayleigh(field: Callable, a: Annulus, z_halfwidth: float,
                      grid: tuple[int, int, int] = (64, 32, 64), form: str = "gradient",
                      *, periodic: bool = False, support_tol: float = 1e-12,
                      z_chunk: int = 16) -> float:
    """Quotient ``||grad v||^2 / ||v||^2`` or ``||curl v||^2 / ||v||^2``.

    ``field(rho, theta, z)`` returns cylindrical components ``(v_rho, v_theta,
    v_z)`` (extra outputs are ignored). The integrals use the midpoint rule on
    ``grid = (n_rho, n_theta, n_z)`` cells over ``|z| <= z_halfwidth`` with the
    volume element ``rho drho dtheta dz``; derivatives are central differences
    with a quarter-cell step at each node. With ``periodic=True`` the field is
    taken to be periodic in z with period ``2 * z_halfwidth`` and no support
    check is made.
    """
    if form not in ("gradient", "curl"):
        raise ConfigurationError(f"form must be 'gradient' or 'curl', got {form!r}")
    n_r, n_t, n_z = (int(n) for n in grid)
    if min(n_r, n_t, n_z) < 1 or not z_halfwidth > 0.0:
        raise ConfigurationError("grid sizes must be positive and z_halfwidth > 0")

    def cart(rho, theta, z):
        out = field(rho, theta, z)
        vr, vt, vz = (np.broadcast_to(np.asarray(c, float), np.shape(rho)) for c in out[:3])
        vx, vy = frame_to_cartesian(theta, vr, vt)
        return np.stack([vx, vy, vz])

    dr, dt, dz = a.gap / n_r, TWO_PI / n_t, 2.0 * z_halfwidth / n_z
    rho_1d = a.r_inner + dr * (np.arange(n_r) + 0.5)
    th_1d = dt * (np.arange(n_t) + 0.5)
    z_1d = -z_halfwidth + dz * (np.arange(n_z) + 0.5)
    hr, ht, hz = 0.25 * dr, 0.25 * dt, 0.25 * dz

    num_parts, den_parts, peak = [], [], 0.0
    for start in range(0, n_z, z_chunk):
        R, T, Z = np.meshgrid(rho_1d, th_1d, z_1d[start:start + z_chunk], indexing="ij")
        v = cart(R, T, Z)
        d_r = (cart(R + hr, T, Z) - cart(R - hr, T, Z)) / (2.0 * hr)
        d_t = (cart(R, T + ht, Z) - cart(R, T - ht, Z)) / (2.0 * ht)
        d_z = (cart(R, T, Z + hz) - cart(R, T, Z - hz)) / (2.0 * hz)
        if form == "gradient":
            dens = np.sum(d_r**2 + (d_t / R) ** 2 + d_z**2, axis=0)
        else:
            c, s = np.cos(T), np.sin(T)
            d_x = c * d_r - s / R * d_t
            d_y = s * d_r + c / R * d_t
            curl = np.stack([d_y[2] - d_z[1], d_z[0] - d_x[2], d_x[1] - d_y[0]])
            dens = np.sum(curl**2, axis=0)
        num_parts.append(np.sum(R * dens))
        den_parts.append(np.sum(R * np.sum(v * v, axis=0)))
        peak = max(peak, float(np.max(np.abs(v))))

    if not periodic:
        # the field must vanish on and beyond the truncation caps
        Rb, Tb = np.meshgrid(rho_1d, th_1d, indexing="ij")
        for zc in (z_halfwidth, -z_halfwidth, 1.5 * z_halfwidth, -1.5 * z_halfwidth):
            cap = cart(Rb, Tb, np.full_like(Rb, zc))
            if np.max(np.abs(cap)) > support_tol * max(peak, 1.0):
                raise DomainError(f"field support exceeds the truncation |z| <= {z_halfwidth}")

    den = math.fsum(den_parts)
    if den <= 0.0:
        raise ConfigurationError("field vanishes on the grid")
    return math.fsum(num_parts) / den


# --- asymptotics ------------------------------------------------------------

@dataclass(frozen=True)
class PhiRow:
    r1: float
    r2: float
    phi1: float
    phi2: float
    scaled_phi1: float


def phi_values(a: Annulus):
    """The two coefficients of ``M_out(alpha, beta)^2 = alpha^2 phi1 + beta^2 phi2 / 16``."""
    r1, r2 = a.r_inner, a.r_outer
    phi1 = r2**4 / (a.sq_diff**2 * r1**2)
    phi2 = (a.sq_diff / (r1 * 2.0 * a.log_ratio) - r1) ** 2
    return phi1, phi2


def phi_asymptotics(annuli: Iterable[Annulus]) -> list[PhiRow]:
    rows = []
    for a in annuli:
        phi1, phi2 = phi_values(a)
        rows.append(PhiRow(a.r_inner, a.r_outer, phi1, phi2, a.gap**2 * phi1))
    return rows


PHI_HEADER = ("r1", "r2", "phi1", "phi2", "scaled_phi1")


def phi_csv(rows: Iterable[PhiRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PHI_HEADER)
    for r in rows:
        w.writerow([repr(r.r1), repr(r.r2), repr(r.phi1), repr(r.phi2), repr(r.scaled_phi1)])
    return buf.getvalue()
