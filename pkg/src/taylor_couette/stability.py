"""Perturbation quadratic forms, magnitude constants and stability certificates.

For a base flow ``U`` with ``u_rho = 0``, the energy identity of a finite-energy
perturbation ``v`` involves ``rho * v^T A(rho) v`` with the symmetric matrix

    A = [[0, a12, a13], [a12, 0, 0], [a13, 0, 0]],
    a12 = (1/2) (u_theta/rho - du_theta/drho),  a13 = -(1/2) du_z/drho.

Its top eigenvalue ``sqrt(a12**2 + a13**2)`` bounds the form pointwise; the
maximum over the gap is the magnitude constant ``M``. Whenever ``M`` is below
a lower bound of the relevant Poincare constant, no nontrivial steady
perturbation exists.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ConfigurationError, ConsistencyError, ConvergenceError
from .flows import FlowFamily, FlowSpec, radial_profiles
from .functional_bounds import bound_set
from .geometry import Annulus

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

THEOREMS = ("3.3", "3.5", "4.2", "4.6", "4.7")
_DEFAULT_THEOREM = {
    FlowFamily.COUETTE_INNER: "3.3",
    FlowFamily.SPIRAL_INNER: "3.3",
    FlowFamily.COUETTE_OUTER: "3.5",
    FlowFamily.SPIRAL_OUTER: "3.5",
    FlowFamily.VORTICITY_OUTER: "4.2",
    FlowFamily.VORTICITY_INNER: "4.6",
}
_THEOREM_FAMILIES = {
    "3.3": {FlowFamily.COUETTE_INNER, FlowFamily.SPIRAL_INNER},
    "3.5": {FlowFamily.COUETTE_OUTER, FlowFamily.SPIRAL_OUTER},
    "4.2": {FlowFamily.VORTICITY_OUTER},
    "4.6": {FlowFamily.VORTICITY_INNER},
    "4.7": {FlowFamily.VORTICITY_INNER},
}


def perturbation_matrix(spec: FlowSpec, a: Annulus, rho) -> np.ndarray:
    """Symmetric matrix ``A(rho)``; shape ``(3, 3)`` or ``(..., 3, 3)`` for arrays."""
    rho = a.check_radius(rho)
    pr = radial_profiles(spec, a, rho)
    a12 = 0.5 * (pr.u_theta / rho - pr.du_theta)
    a13 = -0.5 * pr.du_z
    A = np.zeros(np.shape(rho) + (3, 3))
    A[..., 0, 1] = A[..., 1, 0] = a12
    A[..., 0, 2] = A[..., 2, 0] = a13
    return A


def h_function(a: Annulus, rho):
    """``rho - (R2^2 - R1^2) / (rho log(R2^2/R1^2))``; increasing and concave on the gap."""
    rho = np.asarray(rho, dtype=float)
    h = rho - a.sq_diff / (rho * 2.0 * a.log_ratio)
    return float(h) if h.ndim == 0 else h


def upsilon_closed_form(spec: FlowSpec, a: Annulus, rho):
    """Top eigenvalue of ``A(rho)`` written out per family."""
    r1, r2 = a.r_inner, a.r_outer
    rho = np.asarray(rho, dtype=float)
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    fam = spec.family
    if fam.moving_wall == "inner":
        rot = al * al * r1**2 * r2**4 / (a.sq_diff**2 * rho**4)
    else:
        rot = al * al * r1**4 * r2**2 / (a.sq_diff**2 * rho**4)
    if fam.is_vorticity:
        rm = r1 if fam.moving_wall == "inner" else r2
        c = a.sq_diff / a.log_ratio
        ax = ((be - ga) / 4.0 * rm * rm - be / 8.0 * c) / rho + rho * ga / 4.0
        axial = ax * ax
    else:
        axial = be * be / 16.0 * h_function(a, rho) ** 2
    out = np.sqrt(rot + axial)
    return float(out) if out.ndim == 0 else out


def upsilon(spec: FlowSpec, a: Annulus, rho, *, rtol: float = 1e-10):
    """Largest eigenvalue of ``A(rho)``, cross-checked against the closed form."""
    A = perturbation_matrix(spec, a, rho)
    numeric = np.linalg.eigvalsh(A)[..., -1]
    closed = np.asarray(upsilon_closed_form(spec, a, rho))
    gap = np.abs(numeric - closed)
    if np.any(gap > rtol * np.maximum(1.0, np.abs(closed))):
        raise ConsistencyError(
            f"eigen-solve and closed form disagree by {float(np.max(gap)):.3e}"
        )
    return float(numeric) if np.ndim(numeric) == 0 else numeric


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 500):
    """Maximize a unimodal ``f`` on ``[lo, hi]``. Returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceError(f"golden section did not reach tol={tol:g} in {max_iter} steps")
    x = 0.5 * (a + b)
    return x, f(x)


def maximize_on_interval(f: Callable, lo: float, hi: float, n_grid: int = 1024,
                         tol: float = 1e-12):
    """Grid bracket followed by golden-section refinement; endpoints included.

    ``f`` must accept arrays. Returns ``(argmax, max)``.
    """
    tol = max(tol, 4.0 * np.finfo(float).eps * max(abs(lo), abs(hi)))
    xs = np.linspace(lo, hi, n_grid)
    vals = np.asarray(f(xs), dtype=float)
    i = int(np.argmax(vals))
    left, right = xs[max(i - 1, 0)], xs[min(i + 1, n_grid - 1)]
    x, fx = golden_section_max(lambda t: float(f(np.asarray(t))), left, right, tol)
    best = [(fx, x), (float(vals[i]), float(xs[i]))]
    for edge in (lo, hi):
        best.append((float(f(np.asarray(edge))), edge))
    # ties resolve to the smallest radius
    fbest = max(v for v, _ in best)
    x_best = min(x for v, x in best if v == fbest)
    return float(x_best), float(fbest)


def m_closed_form(spec: FlowSpec, a: Annulus) -> float:
    """Magnitude constant of the Dirichlet families (attained on the inner wall)."""
    if spec.family.is_vorticity:
        raise ConfigurationError("vorticity families have no endpoint closed form")
    return float(upsilon_closed_form(spec, a, a.r_inner))


def m_constant(spec: FlowSpec, a: Annulus, *, n_grid: int = 1024, tol: float = 1e-12):
    """Return ``(m_value, argmax_rho)``, the maximum of ``upsilon`` over the gap.

    For the Dirichlet families the closed form on ``R1`` is returned after the
    numeric maximization confirms the maximizer sits on ``R1``.
    """
    def objective(rho):
        return upsilon_closed_form(spec, a, rho)

    x, fx = maximize_on_interval(objective, a.r_inner, a.r_outer, n_grid, tol)
    # spot check of the closed form against the eigen-solve at the maximizer
    upsilon(spec, a, x)
    if spec.family.is_vorticity:
        return fx, x
    m = m_closed_form(spec, a)
    if m > 0.0 and (x - a.r_inner > 1e-8 * a.gap or fx > m * (1.0 + 1e-12)):
        raise ConsistencyError(
            f"maximum of upsilon found at rho={x!r}, not on the inner wall"
        )
    return m, x


@dataclass
class StabilityReport:
    m_value: float
    argmax_rho: float
    lambda_lower: float | None
    certified: bool
    theorem_tag: str
    applicable: bool = True
    bound_source: str = "paper_lower"
    family: str = ""
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def lower_bound_for(theorem: str, a: Annulus):
    """Computable lower bound used by ``theorem``; None when none exists."""
    bs = bound_set(a)
    if theorem in ("3.3", "3.5"):
        return bs.lower_best
    if theorem == "4.2":
        return bs.lower_one_wall
    if theorem == "4.6":
        return bs.curl_factor * bs.lower_one_wall
    if theorem == "4.7":
        return None
    raise ConfigurationError(f"unknown theorem tag {theorem!r}; expected one of {THEOREMS}")


def certify(spec: FlowSpec, a: Annulus, bound_source: str = "paper_lower", *,
            theorem: str | None = None, user_lambda: float | None = None) -> StabilityReport:
    """Compare the magnitude constant with a lower bound of the Poincare constant.

    ``certified`` is True only when ``m_value < lambda_lower``; False never
    claims instability.
    """
    theorem = _DEFAULT_THEOREM[spec.family] if theorem is None else str(theorem)
    if theorem not in THEOREMS:
        raise ConfigurationError(f"unknown theorem tag {theorem!r}; expected one of {THEOREMS}")
    if spec.family not in _THEOREM_FAMILIES[theorem]:
        raise ConfigurationError(f"theorem {theorem} does not cover {spec.family.value}")
    if bound_source not in ("paper_lower", "user_value"):
        raise ConfigurationError("bound_source must be 'paper_lower' or 'user_value'")

    m, x = m_constant(spec, a)
    note = ""
    applicable = True
    if theorem == "4.6" and not a.ratio < math.e:
        applicable = False
        note = "needs R2/R1 in (1, e)"
    if bound_source == "user_value":
        if user_lambda is None or not (math.isfinite(user_lambda) and user_lambda > 0.0):
            raise ConfigurationError("user_value needs a positive finite user_lambda")
        lam = float(user_lambda)
    else:
        lam = lower_bound_for(theorem, a)
        if lam is None:
            applicable = False
            note = note or "no computable lower bound; pass bound_source='user_value'"
    certified = bool(applicable and lam is not None and m < lam)
    return StabilityReport(m, x, lam, certified, theorem,
                           applicable, bound_source, spec.family.value, note)


def certify_many(specs: Iterable[FlowSpec], a: Annulus, **kwargs) -> list[StabilityReport]:
    return [certify(s, a, **kwargs) for s in specs]
