"""Closed-form steady flows in the annulus: velocity, pressure and vorticity.

Six families are available. The two Couette families are purely azimuthal.
The two spiral Poiseuille families add an axial Poiseuille profile driven by
a constant pressure drop (Dirichlet data on both walls). The two spiral
Poiseuille-Couette families carry vorticity data on the moving wall and a
logarithmic sliding term in the axial profile.

Every profile depends on ``rho`` only; ``u_rho`` vanishes identically and the
pressure is ``alpha**2 * P_c(rho) + slope * z`` with the additive constant
set to zero.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError
from .geometry import Annulus, CylPoint, CylVector


class FlowFamily(str, Enum):
    COUETTE_INNER = "CouetteInnerRotating"
    COUETTE_OUTER = "CouetteOuterRotating"
    SPIRAL_INNER = "SpiralPoiseuilleInnerRotating"
    SPIRAL_OUTER = "SpiralPoiseuilleOuterRotating"
    VORTICITY_INNER = "SpiralPCVorticityOnInner"
    VORTICITY_OUTER = "SpiralPCVorticityOnOuter"

    @property
    def moving_wall(self) -> str:
        """Which cylinder carries the nonzero (rotation or vorticity) data."""
        if self in (FlowFamily.COUETTE_INNER, FlowFamily.SPIRAL_INNER,
                    FlowFamily.VORTICITY_INNER):
            return "inner"
        return "outer"

    @property
    def is_vorticity(self) -> bool:
        return self in (FlowFamily.VORTICITY_INNER, FlowFamily.VORTICITY_OUTER)

    @property
    def is_couette(self) -> bool:
        return self in (FlowFamily.COUETTE_INNER, FlowFamily.COUETTE_OUTER)

    @property
    def couette_counterpart(self) -> "FlowFamily":
        return (FlowFamily.COUETTE_INNER if self.moving_wall == "inner"
                else FlowFamily.COUETTE_OUTER)

    @classmethod
    def parse(cls, value) -> "FlowFamily":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        for member in cls:
            if key in (member.value.lower(), member.name.lower().replace("_", "")):
                return member
        names = ", ".join(m.value for m in cls)
        raise ConfigurationError(f"unknown flow family {value!r}; expected one of {names}")


@dataclass(frozen=True)
class FlowSpec:
    """A flow family together with its amplitudes.

    ``alpha`` is the rotation amplitude (wall speed). For the spiral
    Poiseuille families ``beta`` is the axial pressure-drop rate; for the
    vorticity families ``beta`` sizes the vorticity data and ``gamma`` is the
    pressure-drop rate. Couette families accept ``alpha`` only.
    """

    family: FlowFamily
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        fam = FlowFamily.parse(self.family)
        object.__setattr__(self, "family", fam)
        for name in ("alpha", "beta", "gamma"):
            val = getattr(self, name)
            if val is None:
                val = 0.0
            try:
                val = float(val)
            except (TypeError, ValueError):
                raise ConfigurationError(f"{name} must be a number, got {val!r}") from None
            if not math.isfinite(val):
                raise ConfigurationError(f"{name} must be finite, got {val}")
            object.__setattr__(self, name, val)
        if fam.is_couette and self.beta != 0.0:
            raise ConfigurationError(f"{fam.value} takes alpha only; got beta={self.beta}")
        if not fam.is_vorticity and self.gamma != 0.0:
            raise ConfigurationError(
                f"{fam.value} has no gamma parameter; got gamma={self.gamma}"
            )

    @property
    def axial_slope(self) -> float:
        """Axial pressure gradient ``dp/dz``."""
        return self.gamma if self.family.is_vorticity else self.beta

    def to_dict(self) -> dict:
        return {"family": self.family.value, "alpha": self.alpha,
                "beta": self.beta, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, data: dict) -> "FlowSpec":
        if not isinstance(data, dict) or "family" not in data:
            raise ConfigurationError(f"flow spec needs a 'family' key, got {data!r}")
        extra = set(data) - {"family", "alpha", "beta", "gamma"}
        if extra:
            raise ConfigurationError(f"unknown flow spec keys: {sorted(extra)}")
        return cls(data["family"], data.get("alpha", 0.0), data.get("beta", 0.0),
                   data.get("gamma", 0.0))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "FlowSpec":
        return cls.from_dict(json.loads(text))


class RadialProfiles(NamedTuple):
    """Radial profiles of a family and their analytic derivatives."""

    u_theta: np.ndarray
    du_theta: np.ndarray
    d2u_theta: np.ndarray
    u_z: np.ndarray
    du_z: np.ndarray
    d2u_z: np.ndarray
    p_radial: np.ndarray
    dp_drho: np.ndarray
    dp_dz: float


class FieldValues(NamedTuple):
    u_rho: np.ndarray
    u_theta: np.ndarray
    u_z: np.ndarray
    p: np.ndarray
    w_rho: np.ndarray
    w_theta: np.ndarray
    w_z: np.ndarray


# --- scalar profiles -------------------------------------------------------

def _couette_terms(a: Annulus, variant: str, rho):
    """Couette profile, its first two derivatives, pressure part and its slope
    (all for unit amplitude)."""
    r1, r2 = a.r_inner, a.r_outer
    rho = np.asarray(rho, dtype=float)
    if variant == "inner":
        k = r1 / a.sq_diff
        u = k * (r2 * r2 / rho - rho)
        du = k * (-r2 * r2 / rho**2 - 1.0)
        d2u = 2.0 * k * r2 * r2 / rho**3
        p = 0.5 * k * k * (rho**2 - r2**4 / rho**2 - 4.0 * r2 * r2 * np.log(rho))
        dp = 0.5 * k * k * (2.0 * rho + 2.0 * r2**4 / rho**3 - 4.0 * r2 * r2 / rho)
    elif variant == "outer":
        k = r2 / a.sq_diff
        u = k * (rho - r1 * r1 / rho)
        du = k * (1.0 + r1 * r1 / rho**2)
        d2u = -2.0 * k * r1 * r1 / rho**3
        p = 0.5 * k * k * (rho**2 - r1**4 / rho**2 - 4.0 * r1 * r1 * np.log(rho))
        dp = 0.5 * k * k * (2.0 * rho + 2.0 * r1**4 / rho**3 - 4.0 * r1 * r1 / rho)
    else:
        raise ConfigurationError(f"variant must be 'inner' or 'outer', got {variant!r}")
    return u, du, d2u, p, dp


def _log_over(rho, ref):
    return np.log(np.asarray(rho, dtype=float) / ref)


def couette_profile(a: Annulus, variant: str, rho):
    """Unit-amplitude Couette profile for the rotating ``variant`` cylinder."""
    rho = a.check_radius(rho)
    u = _couette_terms(a, variant, rho)[0]
    return float(u) if u.ndim == 0 else u


def poiseuille_profile(a: Annulus, rho):
    """Circular Poiseuille profile; vanishes on both walls and is convex."""
    rho = a.check_radius(rho)
    u = _poiseuille_terms(a, rho)[0]
    return float(u) if u.ndim == 0 else u


def _poiseuille_terms(a: Annulus, rho):
    r1 = a.r_inner
    c = a.sq_diff / a.log_ratio
    rho = np.asarray(rho, dtype=float)
    u = 0.25 * (rho**2 - r1 * r1 - c * _log_over(rho, r1))
    du = 0.25 * (2.0 * rho - c / rho)
    d2u = 0.25 * (2.0 + c / rho**2)
    return u, du, d2u


def poiseuille_vorticity(a: Annulus, rho):
    """Azimuthal vorticity of the unit Poiseuille profile, ``-dU_P/drho``."""
    c = a.sq_diff / a.log_ratio
    rho = np.asarray(rho, dtype=float)
    w = 0.25 * (c / rho - 2.0 * rho)
    return float(w) if w.ndim == 0 else w


def _sliding_terms(a: Annulus, moving: str, beta: float, gamma: float, rho):
    """Axial profile of the vorticity families (moving wall radius ``rm``,
    still wall radius ``rs``)."""
    if moving == "inner":
        rm, rs = a.r_inner, a.r_outer
    else:
        rm, rs = a.r_outer, a.r_inner
    rho = np.asarray(rho, dtype=float)
    slide = beta * rm * poiseuille_vorticity(a, rm)
    lg = _log_over(rho, rs)
    u = 0.25 * gamma * (rho**2 - rs * rs - 2.0 * rm * rm * lg) - slide * lg
    du = 0.25 * gamma * (2.0 * rho - 2.0 * rm * rm / rho) - slide / rho
    d2u = 0.25 * gamma * (2.0 + 2.0 * rm * rm / rho**2) + slide / rho**2
    return u, du, d2u


def radial_profiles(spec: FlowSpec, a: Annulus, rho, *, check: bool = True) -> RadialProfiles:
    """Profiles ``u_theta(rho)``, ``u_z(rho)``, radial pressure and derivatives."""
    rho = a.check_radius(rho) if check else np.asarray(rho, dtype=float)
    fam = spec.family
    uc, duc, d2uc, pc, dpc = _couette_terms(a, fam.moving_wall, rho)
    al = spec.alpha
    if fam.is_couette:
        zero = np.zeros_like(rho)
        uz, duz, d2uz = zero, zero, zero
    elif fam.is_vorticity:
        uz, duz, d2uz = _sliding_terms(a, fam.moving_wall, spec.beta, spec.gamma, rho)
    else:
        up, dup, d2up = _poiseuille_terms(a, rho)
        uz, duz, d2uz = spec.beta * up, spec.beta * dup, spec.beta * d2up
    return RadialProfiles(al * uc, al * duc, al * d2uc, uz, duz, d2uz,
                          al * al * pc, al * al * dpc, spec.axial_slope)


def evaluate(spec: FlowSpec, a: Annulus, rho, theta=0.0, z=0.0) -> FieldValues:
    """Vectorized velocity, pressure and vorticity at ``(rho, theta, z)``.

    The fields do not depend on ``theta``; ``theta`` only sets the output shape.
    """
    rho, theta, z = np.broadcast_arrays(np.asarray(rho, float), np.asarray(theta, float),
                                        np.asarray(z, float))
    pr = radial_profiles(spec, a, rho)
    zero = np.zeros_like(rho)
    p = pr.p_radial + pr.dp_dz * z
    w_theta = -pr.du_z
    w_z = pr.du_theta + pr.u_theta / rho
    return FieldValues(zero, pr.u_theta + zero, pr.u_z + zero, p, zero.copy(),
                       w_theta + zero, w_z + zero)


def velocity(spec: FlowSpec, a: Annulus, p: CylPoint) -> CylVector:
    f = evaluate(spec, a, p.rho, p.theta, p.z)
    return CylVector(float(f.u_rho), float(f.u_theta), float(f.u_z))


def pressure(spec: FlowSpec, a: Annulus, p: CylPoint) -> float:
    return float(evaluate(spec, a, p.rho, p.theta, p.z).p)


def vorticity(spec: FlowSpec, a: Annulus, p: CylPoint) -> CylVector:
    """Curl of the velocity, ``(0, -du_z/drho, du_theta/drho + u_theta/rho)``."""
    f = evaluate(spec, a, p.rho, p.theta, p.z)
    return CylVector(float(f.w_rho), float(f.w_theta), float(f.w_z))


def boundary_vorticity_data(spec: FlowSpec, a: Annulus):
    """Vorticity prescribed on the moving wall by a vorticity family.

    It is the curl of the spiral Poiseuille flow with the same ``alpha`` and
    ``beta`` on that wall, returned as ``(w_theta, w_z)``.
    """
    if not spec.family.is_vorticity:
        raise ConfigurationError(f"{spec.family.value} carries no vorticity data")
    moving = spec.family.moving_wall
    dirichlet = (FlowFamily.SPIRAL_INNER if moving == "inner" else FlowFamily.SPIRAL_OUTER)
    r = a.r_inner if moving == "inner" else a.r_outer
    f = evaluate(FlowSpec(dirichlet, spec.alpha, spec.beta), a, r)
    return float(f.w_theta), float(f.w_z)


class FamilyField:
    """Callable ``(rho, theta, z) -> (u_rho, u_theta, u_z, p)`` for a family.

    Used where a generic field is expected (finite-difference checks). Points
    outside the closed annulus are evaluated by the same closed form.
    """

    def __init__(self, spec: FlowSpec, a: Annulus):
        self.spec = spec
        self.annulus = a

    def __call__(self, rho, theta, z):
        rho, theta, z = np.broadcast_arrays(np.asarray(rho, float), np.asarray(theta, float),
                                            np.asarray(z, float))
        pr = radial_profiles(self.spec, self.annulus, rho, check=False)
        zero = np.zeros_like(rho)
        return zero, pr.u_theta + zero, pr.u_z + zero, pr.p_radial + pr.dp_dz * z
