"""Annulus geometry, cylindrical points/vectors and frame conversions.

All lengths are dimensionless (unit kinematic viscosity).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

TWO_PI = 2.0 * math.pi


def normalize_angle(theta):
    """Map angles to the representative in ``[0, 2*pi)``."""
    t = np.mod(theta, TWO_PI)
    # np.mod can round tiny negative inputs up to exactly 2*pi
    t = np.where(t >= TWO_PI, 0.0, t)
    if np.ndim(t) == 0:
        return float(t)
    return t


@dataclass(frozen=True)
class Annulus:
    """Cylindrical annulus ``r_inner < rho < r_outer``, unbounded in z."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        r1, r2 = float(self.r_inner), float(self.r_outer)
        if not (math.isfinite(r1) and math.isfinite(r2)):
            raise ConfigurationError(f"radii must be finite, got ({r1}, {r2})")
        if not 0.0 < r1 < r2:
            raise ConfigurationError(f"need 0 < r_inner < r_outer, got ({r1}, {r2})")
        object.__setattr__(self, "r_inner", r1)
        object.__setattr__(self, "r_outer", r2)

    @property
    def gap(self) -> float:
        return self.r_outer - self.r_inner

    @property
    def log_ratio(self) -> float:
        """``log(R2/R1)``, accurate for thin annuli."""
        return math.log1p(self.gap / self.r_inner)

    @property
    def sq_diff(self) -> float:
        """``R2**2 - R1**2``."""
        return self.gap * (self.r_outer + self.r_inner)

    @property
    def ratio(self) -> float:
        return self.r_outer / self.r_inner

    def check_radius(self, rho, *, interior: bool = False):
        """Raise DomainError unless every ``rho`` lies in the closed (or open) annulus."""
        r = np.asarray(rho, dtype=float)
        if interior:
            bad = ~((r > self.r_inner) & (r < self.r_outer))
        else:
            bad = ~((r >= self.r_inner) & (r <= self.r_outer))
        if np.any(bad):
            worst = r[bad].flat[0] if r.ndim else float(r)
            span = "(R1, R2)" if interior else "[R1, R2]"
            raise DomainError(
                f"rho={worst!r} outside {span}=({self.r_inner}, {self.r_outer})"
            )
        return r

    def to_dict(self) -> dict:
        return {"r_inner": self.r_inner, "r_outer": self.r_outer}


@dataclass(frozen=True)
class CylPoint:
    rho: float
    theta: float
    z: float

    def __post_init__(self):
        if not self.rho >= 0.0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "theta", normalize_angle(float(self.theta)))
        object.__setattr__(self, "z", float(self.z))

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.theta, self.z])


@dataclass(frozen=True)
class CylVector:
    """Components in the local orthonormal frame ``(e_rho, e_theta, e_z)``."""

    v_rho: float
    v_theta: float
    v_z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.v_rho, self.v_theta, self.v_z])

    def norm(self) -> float:
        return math.sqrt(self.v_rho**2 + self.v_theta**2 + self.v_z**2)


def peak_radius(a: Annulus) -> float:
    """Radius where the circular Poiseuille profile attains its extremum."""
    return math.sqrt(a.sq_diff / (2.0 * a.log_ratio))


def frame_to_cartesian(theta, v_rho, v_theta):
    """Rotate planar frame components to cartesian ``(v_x, v_y)``."""
    c, s = np.cos(theta), np.sin(theta)
    return c * v_rho - s * v_theta, s * v_rho + c * v_theta


def frame_from_cartesian(theta, v_x, v_y):
    c, s = np.cos(theta), np.sin(theta)
    return c * v_x + s * v_y, -s * v_x + c * v_y


def cyl_to_cart(p: CylPoint, v: CylVector | None = None):
    """Return cartesian ``(point, vector)`` arrays; vector is None if not given."""
    xyz = np.array([p.rho * math.cos(p.theta), p.rho * math.sin(p.theta), p.z])
    if v is None:
        return xyz, None
    vx, vy = frame_to_cartesian(p.theta, v.v_rho, v.v_theta)
    return xyz, np.array([float(vx), float(vy), v.v_z])


def cart_to_cyl(xyz, vec=None):
    """Inverse of :func:`cyl_to_cart`. Points on the z-axis are rejected."""
    x, y, z = (float(c) for c in xyz)
    if x == 0.0 and y == 0.0:
        raise DomainError("azimuth undefined on the axis x = y = 0")
    rho = math.hypot(x, y)
    theta = math.atan2(y, x)
    p = CylPoint(rho, theta, z)
    if vec is None:
        return p, None
    vr, vt = frame_from_cartesian(p.theta, float(vec[0]), float(vec[1]))
    return p, CylVector(float(vr), float(vt), float(vec[2]))
