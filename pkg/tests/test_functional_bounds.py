import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from taylor_couette import (Annulus, ConfigurationError, DomainError, bound_set,
                            discrete_rayleigh, phi_asymptotics, v_epsilon_rayleigh)
from taylor_couette.functional_bounds import (PHI_HEADER, _v_eps_quadrature, phi_csv,
                                              phi_values, v_epsilon_field)
from tests import oracles

A12 = Annulus(1.0, 2.0)


def test_bound_set_values():
    bs = bound_set(A12)
    assert bs.lower_square == pytest.approx(oracles.LOWER_SQUARE_12, rel=1e-14)
    assert bs.lower_radial == pytest.approx(oracles.LOWER_RADIAL_12, rel=1e-14)
    assert bs.upper == 10.0
    assert bs.curl_factor == pytest.approx(oracles.CURL_FACTOR_12, rel=1e-14)
    assert bs.lower_best == max(bs.lower_square, bs.lower_radial)
    assert bs.lower_one_wall == pytest.approx(bs.lower_radial / 4.0)
    assert bound_set(Annulus(1.0, 10.0)).curl_factor < 0.0


@pytest.mark.parametrize("d", [1e-1, 1e-2, 1e-3, 1e-4, 1e-6])
def test_thin_annulus_window(d):
    # d^2 * lower_radial = 4 / (1 + d^2/12 + O(d^3)) tends to 4 from below
    a = Annulus(1.0, 1.0 + d)
    d = a.gap
    scaled = d * d * bound_set(a).lower_radial
    assert 4.0 * (1.0 - d * d / 12.0) - 1e-9 <= scaled <= 4.0
    assert d * d * bound_set(a).upper == pytest.approx(10.0, rel=1e-9)


def test_lower_below_upper_random():
    rng = np.random.default_rng(0)
    r1 = 10.0 ** rng.uniform(-3, 3, 10_000)
    ratio = 10.0 ** rng.uniform(1e-6, 3, 10_000)
    for x, q in zip(r1, ratio):
        bs = bound_set(Annulus(x, x * q))
        assert bs.lower_best <= bs.upper


def test_curl_factor_root_is_e():
    root = brentq(lambda q: bound_set(Annulus(1.0, q)).curl_factor, 1.5, 4.0, xtol=1e-14)
    assert root == pytest.approx(math.e, abs=1e-12)


@given(q=st.floats(1.0 + 1e-9, 1e3))
def test_curl_factor_sign(q):
    f = bound_set(Annulus(1.0, q)).curl_factor
    assert (f > 0) == (q < math.e) or abs(q - math.e) < 1e-12


def test_v_epsilon_unit():
    r = v_epsilon_rayleigh(A12, 1.0)
    assert abs(r.numeric_quotient - 13.0) < 1e-5
    assert r.closed_form == 13.0 and r.exact_quotient == 13.0
    assert r.l2_norm_sq == pytest.approx(r.l2_norm_sq_closed, rel=1e-6)
    assert r.grad_norm_sq == pytest.approx(r.grad_norm_sq_exact, rel=1e-6)


def test_v_epsilon_small_eps_matches_exact_integrals():
    # the displayed form is 3 eps^3 + 10/d^2; the integrals give 3 eps^2 + 10/d^2
    r = v_epsilon_rayleigh(A12, 0.1)
    assert r.closed_form == pytest.approx(oracles.V_EPS_QUOTED[0.1], rel=1e-15)
    assert r.exact_quotient == pytest.approx(oracles.V_EPS_EXACT[0.1], rel=1e-15)
    assert r.numeric_quotient == pytest.approx(r.exact_quotient, rel=1e-6)
    assert r.grad_norm_sq == pytest.approx(r.grad_norm_sq_exact, rel=1e-6)
    assert r.l2_norm_sq == pytest.approx(r.l2_norm_sq_closed, rel=1e-6)


@pytest.mark.parametrize("eps", [0.1, 0.5, 1.0, 3.0])
def test_v_epsilon_second_order(eps):
    exact = 3 * eps**2 + 10.0
    errs = []
    for n in (64, 128, 256):
        l2, g = _v_eps_quadrature(A12, eps, n, n)
        errs.append(abs(g / l2 - exact))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.15)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.15)


@pytest.mark.parametrize("radii", [(1.0, 2.0), (0.5, 0.6), (1.0, 10.0)])
@pytest.mark.parametrize("eps", [0.05, 1.0, 4.0])
def test_v_epsilon_above_lower_bound(radii, eps):
    a = Annulus(*radii)
    r = v_epsilon_rayleigh(a, eps)
    assert r.numeric_quotient >= bound_set(a).lower_best


def test_v_epsilon_rejects_bad_eps():
    with pytest.raises(ConfigurationError):
        v_epsilon_rayleigh(A12, 0.0)


def test_discrete_rayleigh_matches_v_epsilon():
    field = v_epsilon_field(A12, 1.0)
    q = discrete_rayleigh(field, A12, 1.0, grid=(256, 8, 256))
    assert q == pytest.approx(v_epsilon_rayleigh(A12, 1.0).numeric_quotient, rel=1e-3)
    assert q >= bound_set(A12).lower_best


def _swirl(r1, length):
    # (0, (rho - R1)^2 cos^2(pi z / 2L), 0): zero on the inner wall and on the
    # caps, tangential on the outer wall, divergence-free
    def field(rho, theta, z):
        g = np.where(np.abs(z) < length, np.cos(np.pi * z / (2 * length)) ** 2, 0.0)
        return np.zeros_like(rho), (rho - r1) ** 2 * g, np.zeros_like(rho)
    return field


def test_curl_form_dominates_gradient_form():
    f = _swirl(1.0, 1.0)
    grad = discrete_rayleigh(f, A12, 1.0, grid=(128, 8, 128))
    curl = discrete_rayleigh(f, A12, 1.0, grid=(128, 8, 128), form="curl")
    assert curl >= grad * (1 - 1e-3)


def test_discrete_rayleigh_errors():
    f = v_epsilon_field(A12, 0.25)
    with pytest.raises(DomainError):
        discrete_rayleigh(f, A12, 1.0, grid=(16, 4, 16))
    with pytest.raises(ConfigurationError):
        discrete_rayleigh(f, A12, 4.0, form="div")
    with pytest.raises(ConfigurationError):
        discrete_rayleigh(f, A12, 4.0, grid=(0, 4, 4))


def test_discrete_rayleigh_periodic():
    # z-periodic field: the support check is skipped
    def f(rho, theta, z):
        return np.zeros_like(rho), (rho - 1.0) * (2.0 - rho) * np.cos(np.pi * z), np.zeros_like(rho)
    q = discrete_rayleigh(f, A12, 1.0, grid=(64, 4, 64), periodic=True)
    assert q > 0.0


def test_phi_limits():
    thin = phi_asymptotics([Annulus(1.0, 1.0 + 1e-4)])[0]
    assert abs(thin.scaled_phi1 - 0.25) < 1e-3
    assert thin.phi2 < 1e-7
    wide, _ = phi_values(Annulus(1.0, 1e6))
    assert abs(wide - 1.0) < 1e-5


def test_phi_monotone_as_r1_vanishes():
    rows = phi_asymptotics([Annulus(10.0**-j, 1.0) for j in range(1, 7)])
    assert all(b.phi1 > a.phi1 for a, b in zip(rows, rows[1:]))
    assert all(b.phi2 > a.phi2 for a, b in zip(rows, rows[1:]))


def test_phi_csv():
    text = phi_csv(phi_asymptotics([A12, Annulus(1.0, 3.0)]))
    lines = text.split("\n")
    assert lines[0] == ",".join(PHI_HEADER) == "r1,r2,phi1,phi2,scaled_phi1"
    assert len(lines) == 4 and lines[-1] == "" and "\r" not in text
    phi1, phi2 = phi_values(A12)
    assert float(lines[1].split(",")[2]) == phi1
