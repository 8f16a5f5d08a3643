import math

import numpy as np
import pytest

from grushinlab.errors import GridTooCoarse
from grushinlab.profiles import (make_bump, make_grushin_extremal, make_grushin_gaussian,
                                 make_grushin_product, make_power_law, zero_grushin)
from grushinlab.reductions import (B6, R3_SOBOLEV_CONSTANT_SQ, bernoulli_check, beta_measure_identity,
                                   beta_w_map, chain_spread, grushin2d_to_hyperbolic,
                                   grushin3d_to_hyperbolic, inversion_integral_identity,
                                   invert_variable, make_r3_radial, peel_power,
                                   plancherel_power_check, rn_cylindrical_reduction,
                                   small_s_chain_quotients, stereographic_identity,
                                   stereographic_match, l6_chain, w_map, w_map_inverse,
                                   w_measure_identity)

PI = math.pi
U = np.array([0.0, 0.3, 1.0, 2.0, 7.5, 40.0])


def test_peel_power_examples():
    G = peel_power(make_power_law(0.25), 0.25)
    assert np.allclose(G(U), 1.0, rtol=1e-15)
    assert np.allclose(G.d(U), 0.0, atol=1e-15)
    G = peel_power(make_power_law(1.0), 0.25)
    assert np.allclose(G(U), (1 + U) ** -0.75, rtol=1e-14)
    assert np.allclose(G.d(U), -0.75 * (1 + U) ** -1.75, rtol=1e-13)
    F = make_bump(2.0, 1.5)
    back = peel_power(peel_power(F, 0.4), -0.4)
    assert np.allclose(back(U), F(U), rtol=1e-12, atol=1e-15)


def test_invert_variable_examples():
    H = invert_variable(make_power_law(1.0))
    u = np.array([0.1, 0.5, 2.0, 9.0])
    assert np.allclose(H(u), u / (1 + u), rtol=1e-14)
    assert np.allclose(H.d(u), (1 + u) ** -2, rtol=1e-13)
    G = make_power_law(1.7)
    twice = invert_variable(invert_variable(G))
    for v in (0.5, 2.0):
        assert twice(v) == pytest.approx(G(v), rel=1e-14)


def test_inversion_integral_identity_l6_lhs():
    G = make_power_law(0.75)
    phi = lambda u: G(u) ** 6 * (1 + u) ** -1.5
    assert inversion_integral_identity(phi, 6.0) < 1e-8


def test_w_map_examples():
    assert w_map(0.0) == 0.0
    w = float(w_map(3.0))
    assert math.sqrt(3 / 4) == pytest.approx(w / (1 + w), rel=1e-15)
    assert w_map_inverse(w) == pytest.approx(3.0, rel=1e-14)
    assert w_measure_identity(1.0) < 1e-10


def test_beta_w_map_examples():
    u = np.array([0.0, 1.0, 10.0])
    assert np.allclose(beta_w_map(u, 1.0), u, rtol=1e-14)
    assert float(beta_w_map(1.0, 2.0)) == pytest.approx(1 / 3, rel=1e-15)
    for beta in (0.5, 1.0, 2.0, 4.0):
        assert beta_measure_identity(beta) < 1e-10


def test_stereographic():
    assert stereographic_match(0.0) == 0.0
    assert float(stereographic_match(1.0)) == pytest.approx(PI / 2, rel=1e-15)
    w = np.logspace(-3, 3, 7)
    assert np.allclose(np.cos(stereographic_match(w)), (1 - w) / (1 + w), atol=1e-14)
    assert stereographic_identity(make_power_law(0.5)) < 1e-8


@pytest.mark.parametrize("r", [1.0, 2.0, 4.0])
def test_bernoulli_holds_for_r_at_least_one(r):
    rep = bernoulli_check(r)
    assert rep.passed
    assert rep.details["w_max"] == 1e4


def test_bernoulli_fails_below_one():
    assert not bernoulli_check(0.5).passed


@pytest.mark.parametrize("F", [make_power_law(1.0), make_power_law(2.0), make_bump(1.0, 0.8)],
                         ids=lambda F: F.label)
def test_l6_chain(F):
    chain = l6_chain(F)
    assert chain_spread(chain) < 1e-6
    # (1+w)^-2 dw is half the inverted measure, so the w-side L6 mass halves
    lhs = [chain["radial"].lhs, chain["peeled"].lhs, chain["inverted"].lhs,
           2 ** (1 / 3) * chain["w"].lhs]
    assert max(lhs) - min(lhs) <= 1e-8 * max(lhs)


@pytest.mark.parametrize("s", [0.25, 0.4, 0.5])
def test_small_s_chain(s):
    assert chain_spread(small_s_chain_quotients(make_power_law(1.0), s)) < 1e-6


GRUSHIN_2D = [make_grushin_extremal(2, 0.25), make_grushin_gaussian(2),
              make_grushin_product(2, 1.0, 1.0)]
GRUSHIN_3D = [make_grushin_extremal(3, 0.5), make_grushin_gaussian(3),
              make_grushin_product(3, 1.0, 1.5)]


@pytest.mark.parametrize("f", GRUSHIN_2D, ids=lambda f: f.label)
def test_grushin2d_lift(f):
    F, rep = grushin2d_to_hyperbolic(f)
    assert rep.passed, rep
    assert rep.details["chain_residual"] < 1e-5


@pytest.mark.parametrize("f", GRUSHIN_3D, ids=lambda f: f.label)
def test_grushin3d_lift(f):
    F, rep = grushin3d_to_hyperbolic(f)
    assert rep.norm_identity_residual < 1e-4 and rep.form_identity_residual < 1e-4
    assert rep.details["chain_residual"] < 1e-5


def test_grushin_lift_of_extremal_formula():
    F, _ = grushin2d_to_hyperbolic(make_grushin_extremal(2, 0.25))
    x, y = 0.7, 2.3
    assert F(x, y) == pytest.approx(y ** 0.25 * ((1 + y) ** 2 + x * x) ** -0.25, rel=1e-14)


def test_zero_lift():
    _, rep = grushin2d_to_hyperbolic(zero_grushin(2))
    assert rep.details["l6_grushin"] == 0 and rep.details["l6_hyperbolic"] == 0


def test_r3_constants():
    assert R3_SOBOLEV_CONSTANT_SQ == pytest.approx(
        (3 * PI) ** -1 * (2 / (math.sqrt(PI) / 2)) ** (2 / 3), rel=1e-15)
    assert B6 == pytest.approx(4 / 3 * PI ** (-2 / 3), rel=1e-15)


def test_cylindrical_reduction_aubin_talenti():
    _, rep = rn_cylindrical_reduction(make_r3_radial("aubin-talenti"))
    assert rep.details["quotient_r3"] == pytest.approx(R3_SOBOLEV_CONSTANT_SQ, rel=1e-6)
    assert rep.details["quotient_hyperbolic"] == pytest.approx(B6, rel=1e-4)


def test_cylindrical_reduction_gaussian_is_strict():
    _, rep = rn_cylindrical_reduction(make_r3_radial("gaussian"))
    assert rep.details["quotient_r3"] < R3_SOBOLEV_CONSTANT_SQ
    assert rep.details["quotient_hyperbolic"] < B6


def test_plancherel():
    assert plancherel_power_check(lambda x: np.exp(-x * x)).residual < 1e-6
    assert plancherel_power_check(lambda x: 0 * x).residual == 0
    slow = plancherel_power_check(lambda x: 1 / (1 + x * x), tol=1e-4, decay=2.0)
    assert slow.residual < 1e-4


def test_plancherel_too_coarse():
    with pytest.raises(GridTooCoarse):
        plancherel_power_check(lambda x: np.exp(-x * x), tol=1e-6, max_n=16, half_width=8.0, n=8)
