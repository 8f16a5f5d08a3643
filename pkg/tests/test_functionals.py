import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
from scipy import special

from grushinlab.errors import NonConvergence
from grushinlab.functionals import (L6_W, SPHERE_L6, HYPERBOLIC_L4, L4_PEELED, SPHERE_L4, GRUSHIN_2D_CONSTANT,
                                    GRUSHIN_3D_CONSTANT, SpectralParams, evaluate_halfline,
                                    grushin_quotient_2d, grushin_quotient_3d,
                                    hyperbolic_dirichlet_radial, hyperbolic_quotient,
                                    lp_norm_radial, sphere_radial_quotient, spectral_gap_check,
                                    weighted_form_residual)
from grushinlab.profiles import (make_bump, make_constant, make_grushin_extremal,
                                 make_grushin_gaussian, make_plane_bump, make_power_law,
                                 rescale_grushin)
from grushinlab.reductions import B6

PI = math.pi


def beta_oracle(s):
    """Closed forms for F = (1+u)^-s: (lhs, rhs) of the A_p form."""
    p = 2 + 1 / s
    lp = 4 * PI / (s * p - 1)                         # 4 pi int (1+u)^-sp du
    grad = 4 * PI * s * s * special.beta(2, 2 * s - 1)  # 4 pi s^2 int u (1+u)^(-2s-1)
    l2 = 4 * PI / (2 * s - 1)
    return lp ** (2 / p), grad + s * (s - 1) * l2


def test_lp_norm_examples():
    F = make_power_law(1.0)
    assert lp_norm_radial(F, 2) == pytest.approx(math.sqrt(4 * PI), rel=1e-12)
    assert lp_norm_radial(F, 3) == pytest.approx((2 * PI) ** (1 / 3), rel=1e-12)
    assert lp_norm_radial(make_bump(2.0, 1.0).scaled(0.0), 2) == 0


def test_dirichlet_examples():
    assert hyperbolic_dirichlet_radial(make_constant(1.0)) == 0
    assert hyperbolic_dirichlet_radial(make_power_law(1.0)) == pytest.approx(2 * PI, rel=1e-12)
    with pytest.raises(NonConvergence):
        hyperbolic_dirichlet_radial(make_power_law(0.25))


def test_hyperbolic_quotient_examples():
    r = hyperbolic_quotient(make_power_law(1.0), SpectralParams(1.0))
    assert r.quotient == pytest.approx((2 * PI) ** (-1 / 3), rel=1e-9)
    assert abs(r.slack) < 1e-9
    assert hyperbolic_quotient(make_power_law(1.0), SpectralParams(0.5)).quotient < 2 / math.sqrt(PI)
    r2 = hyperbolic_quotient(make_power_law(2.0), SpectralParams(2.0))
    assert r2.quotient == pytest.approx((2 * PI) ** -0.2 * 2 ** -1.8, rel=1e-9)
    assert r2.quotient * r2.rhs == pytest.approx(r2.lhs, rel=1e-12)


@pytest.mark.parametrize("s", [0.6, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 5.0])
def test_closed_form_quotient_identity(s):
    lhs, rhs = beta_oracle(s)
    r = hyperbolic_quotient(make_power_law(s), SpectralParams(s))
    assert r.lhs == pytest.approx(lhs, rel=1e-10)
    assert r.rhs == pytest.approx(rhs, rel=1e-10)
    assert r.quotient == pytest.approx(SpectralParams(s).A_p, rel=1e-9)


def test_constant_coherence():
    assert SpectralParams(0.25).A_p == pytest.approx(4 * PI ** (-2 / 3), rel=1e-15, abs=0)
    assert SpectralParams(0.5).A_p == pytest.approx(2 / math.sqrt(PI), rel=1e-15, abs=0)
    assert B6 == pytest.approx(4 / 3 * PI ** (-2 / 3), rel=1e-15, abs=0)


@given(st.floats(1e-3, 1e3))
def test_spectral_params_duality(s):
    prm = SpectralParams(s)
    assert abs(1 / prm.p + 1 / prm.q - 1) <= 1e-15
    assert (prm.p >= 4) == (s <= 0.5)


def test_grushin_2d():
    assert grushin_quotient_2d(make_grushin_extremal(2, 0.25)).quotient == pytest.approx(
        GRUSHIN_2D_CONSTANT, rel=1e-4)
    g = make_grushin_gaussian(2)
    qg = grushin_quotient_2d(g).quotient
    assert qg < GRUSHIN_2D_CONSTANT
    for lam in (0.5, 2.0):
        assert grushin_quotient_2d(rescale_grushin(g, lam)).quotient == pytest.approx(qg, rel=1e-6)


def test_grushin_3d():
    assert grushin_quotient_3d(make_grushin_extremal(3, 0.5)).quotient == pytest.approx(
        GRUSHIN_3D_CONSTANT, rel=1e-4)
    g = make_grushin_gaussian(3)
    qg = grushin_quotient_3d(g).quotient
    assert qg < GRUSHIN_3D_CONSTANT
    for lam in (0.5, 2.0):
        assert grushin_quotient_3d(rescale_grushin(g, lam)).quotient == pytest.approx(qg, rel=1e-6)


def test_sphere_radial_examples():
    r = sphere_radial_quotient(make_constant(1.0), 6.0)
    assert r.lhs == pytest.approx(1, rel=1e-12) and r.rhs == pytest.approx(1, rel=1e-12)
    assert sphere_radial_quotient(make_power_law(0.5), 4.0).quotient < 1
    assert sphere_radial_quotient(make_power_law(0.25), 6.0).quotient < 1


@pytest.mark.parametrize("alpha", [1.0, 0.25, 0.5])
def test_weighted_form_residual(alpha):
    F = make_plane_bump(0.3, 1.4, 0.8, 0.6)
    assert weighted_form_residual(F, alpha) < 1e-8


def test_spectral_gap_examples():
    assert spectral_gap_check(make_bump(1.0, 0.5)).passed
    r = spectral_gap_check(make_power_law(1.0))
    assert r.passed
    assert r.value == pytest.approx(2 * PI, rel=1e-10) and r.target == pytest.approx(PI, rel=1e-10)


def test_spectral_gap_slack_shrinks():
    ratios = [spectral_gap_check(make_power_law(a)).details["ratio"] for a in (1.0, 0.75, 0.6, 0.55)]
    assert all(r > 1 for r in ratios)
    assert all(b < a for a, b in zip(ratios, ratios[1:]))


SAMPLES = [make_power_law(0.3), make_power_law(1.0), make_power_law(2.5), make_bump(1.0, 0.8),
           make_bump(5.0, 3.0)]


@pytest.mark.parametrize("G", SAMPLES, ids=lambda G: G.label)
def test_sphere_form_dominated(G):
    # 2w <= 4(2w+1) termwise, so the p = 6 sphere form is the stronger one
    assert evaluate_halfline(G, SPHERE_L6).rhs <= evaluate_halfline(G, L6_W).rhs
    assert evaluate_halfline(G, SPHERE_L4).rhs <= evaluate_halfline(G, L4_PEELED).rhs


def test_l4_power_law_below_constant():
    for eps in (0.6, 0.75, 1.0):
        from grushinlab.functionals import evaluate_inequality
        assert evaluate_inequality(make_power_law(eps), HYPERBOLIC_L4).quotient < HYPERBOLIC_L4.constant
