import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
from scipy import special as sp

from grushinlab.errors import ArgumentOutOfRange, NonpositiveArgument
from grushinlab.quadrature import DecayHint, integrate_halfline
from grushinlab.specialfn import (beta, gamma, hyp2f1_diag, hyp2f1_diag_integral, psi,
                                  psi_hypergeometric, psi_integral, psi_large_u, psi_prefactor)

PI = math.pi
U_GRID = np.logspace(-3, 3, 25)
S_GRID = (1.0, 1.25, 1.5, 2.0, 3.0)


def test_gamma_beta():
    assert gamma(1.0) == 1.0
    assert gamma(0.5) == pytest.approx(math.sqrt(PI), rel=1e-14)
    by_quadrature = integrate_halfline(lambda t: t ** -0.5 * np.exp(-t),
                                       DecayHint(singularity="algebraic", exponent=-0.5)).value
    assert gamma(0.5) == pytest.approx(by_quadrature, rel=1e-10)
    assert beta(2.0, 1.0) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(NonpositiveArgument):
        gamma(0.0)
    with pytest.raises(NonpositiveArgument):
        beta(1.0, -2.0)


def series_2f1(s, x, terms=400):
    """Partial sum of F(s, s, 2s; x) with a geometric tail bound."""
    term, total = 1.0, 1.0
    for n in range(terms):
        term *= (s + n) ** 2 / ((2 * s + n) * (n + 1)) * x
        total += term
    ratio = (s + terms) ** 2 / ((2 * s + terms) * (terms + 1)) * x
    return total, term * ratio / (1 - ratio)


def test_hyp2f1_examples():
    assert hyp2f1_diag(1.7, 0.0) == 1.0
    assert hyp2f1_diag(1.0, 0.5) == pytest.approx(2 * math.log(2), rel=1e-14)
    val, bound = series_2f1(2.0, 0.3)
    assert abs(hyp2f1_diag(2.0, 0.3) - val) <= bound + 1e-15 * val
    with pytest.raises(ArgumentOutOfRange):
        hyp2f1_diag(1.0, 1.0)


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5, 2.0, 3.0])
@pytest.mark.parametrize("x", [0.1, 0.5, 0.9, 0.99, 0.999999])
def test_hyp2f1_against_scipy_and_integral(s, x):
    ours = hyp2f1_diag(s, x)
    assert ours == pytest.approx(sp.hyp2f1(s, s, 2 * s, x), rel=1e-10)
    if x <= 0.99:
        assert ours == pytest.approx(hyp2f1_diag_integral(s, x), rel=1e-10)


def test_psi_examples():
    assert psi(1.0, 1.0).value == pytest.approx(math.log(2) / (4 * PI), rel=1e-12)
    big = psi(1e4, 1.5).value / float(psi_large_u(1e4, 1.5))
    assert 0.999 <= big <= 1.001
    small = psi(1e-6, 2.0).value + math.log(1e-6) / (4 * PI)
    assert abs(small) <= 1.0


def test_psi_prefactor():
    s = 1.5
    assert psi_prefactor(s) == pytest.approx(math.gamma(s) ** 2 / (4 * PI * math.gamma(2 * s)), rel=1e-14)


@pytest.mark.parametrize("s", S_GRID)
def test_psi_representations_agree(s):
    for u in U_GRID:
        assert psi(u, s).agreement < 1e-9


def test_psi_closed_form_s1():
    closed = np.log1p(1 / U_GRID) / (4 * PI)
    assert np.allclose(psi_hypergeometric(U_GRID, 1.0), closed, rtol=1e-12, atol=0)
    for u, c in zip(U_GRID, closed):
        assert psi_integral(u, 1.0) == pytest.approx(c, rel=1e-12)


@pytest.mark.parametrize("s", S_GRID)
def test_psi_positive_and_decreasing(s):
    vals = psi_hypergeometric(U_GRID, s)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) < 0)


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(1.0, 3.0))
def test_psi_agreement_property(u, s):
    assert psi(u, s).agreement < 1e-9
