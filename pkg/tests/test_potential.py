import math

import numpy as np
import pytest

from grushinlab.functionals import SpectralParams
from grushinlab.potential import (FractionalIntegral, NormOperator, OperatorParams, apply_Ls_radial,
                                  fractional_integral, group_form_check, hls_dual_check,
                                  hls_quotient, inversion_residual, quadratic_form_Ls,
                                  radiality_check, young_bound_check, young_weight_norm)
from grushinlab.profiles import make_bump, make_constant, make_exponential, make_power_law, unit_mass_bump
from grushinlab.specialfn import psi_hypergeometric

PI = math.pi


def test_apply_Ls_examples():
    assert apply_Ls_radial(make_power_law(2.0), 2.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    assert apply_Ls_radial(make_constant(3.0), 2.5, 0.7) == pytest.approx(3.0 * 2.5 * 1.5, rel=1e-15)
    assert apply_Ls_radial(make_power_law(1.0), 1.0, 0.0) == pytest.approx(1.0, rel=1e-15)


def test_apply_Ls_linear():
    F, G = make_power_law(1.3), make_exponential(0.4)
    u = np.linspace(0, 5, 11)
    both = apply_Ls_radial(F, 1.5, u) * 2.0 - apply_Ls_radial(G, 1.5, u) * 0.5
    sumFG = 2.0 * F(u) - 0.5 * G(u)
    from grushinlab.profiles import RadialProfile
    H = RadialProfile(lambda v: 2 * F(v) - 0.5 * G(v), lambda v: 2 * F.d(v) - 0.5 * G.d(v),
                      deriv2=lambda v: 2 * F.d2(v) - 0.5 * G.d2(v))
    assert np.allclose(apply_Ls_radial(H, 1.5, u), both, rtol=1e-13)
    assert np.allclose(H(u), sumFG)


def test_operator_params():
    p = OperatorParams.euler_lagrange(2.0, 16.0)
    assert p.c == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        OperatorParams(1.0, c=-1.0)


def test_fractional_integral_delta_limit():
    G = unit_mass_bump(1e-3)
    val = fractional_integral(G, 1.0, 1.0)
    assert val == pytest.approx(float(psi_hypergeometric(1.0, 1.0)), rel=2e-2)


def test_fractional_integral_zero():
    assert fractional_integral(make_bump(1.0, 0.5).scaled(0.0), 1.0, 0.5) == 0.0


@pytest.mark.parametrize("s,u0", [(1.0, 0.7), (1.5, 2.0), (2.0, 0.1)])
def test_radiality(s, u0):
    assert radiality_check(make_power_law(2.5), s, u0).passed


def test_group_form():
    assert group_form_check(make_power_law(2.0), 1.0, 0.5).passed


def test_fractional_integral_table_matches_adaptive():
    G = make_power_law(2.0)
    u0 = np.array([0.05, 0.5, 3.0])
    table = FractionalIntegral.for_profile(G, 1.0, u0)(G)
    direct = [fractional_integral(G, 1.0, a) for a in u0]
    assert np.allclose(table, direct, rtol=1e-7)


@pytest.mark.parametrize("s", [1.0, 2.0])
def test_output_is_radial_decreasing(s):
    G = make_power_law(1 + s)
    u0 = np.logspace(-2, 2, 17)
    vals = FractionalIntegral(s, u0)(G)
    assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("G,s", [(make_exponential(1.0), 1.0), (make_power_law(3.0), 2.0),
                                 (make_exponential(0.5), 2.0)],
                         ids=["exp-s1", "cubic-s2", "exp-half-s2"])
def test_inversion_residual(G, s):
    assert inversion_residual(G, s, np.logspace(-1, 1, 9)) < 1e-3


def test_inversion_residual_zero():
    Z = make_power_law(2.0).scaled(0.0)
    assert inversion_residual(Z, 1.0, np.logspace(-1, 1, 5)) == 0.0


def test_young_bound():
    r = young_bound_check(make_power_law(2.0), 1.0)
    assert r.passed
    assert r.details["y_integral"] == pytest.approx(1.0, rel=1e-14)
    assert math.isfinite(r.details["weight_norm"]) and r.details["weight_norm"] > 0


def test_young_zero():
    op = NormOperator(1.0)
    r = young_bound_check(make_power_law(2.0).scaled(0.0), 1.0, operator=op)
    assert r.value == 0 and r.passed


@pytest.fixture(scope="module")
def op_s1():
    return NormOperator(1.0)


def test_hls_extremal_s1(op_s1):
    r = hls_quotient(make_power_law(2.0), 1.0, operator=op_s1)
    assert r.quotient == pytest.approx((2 * PI) ** (-1 / 3), rel=1e-3)


def test_hls_bump_strict():
    G = make_bump(1.0, 0.8)
    r = hls_quotient(G, 1.0)
    assert r.quotient < SpectralParams(1.0).A_p


def test_hls_dual():
    assert hls_dual_check(2.0).residual < 1e-6


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test_quadratic_form_positive_on_bumps(s):
    for c, w in [(0.5, 0.5), (2.0, 1.5), (6.0, 2.0)]:
        assert quadratic_form_Ls(make_bump(c, w), s) > 0
