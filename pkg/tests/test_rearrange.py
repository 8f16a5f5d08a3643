from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from grushinlab.errors import NegativeInput
from grushinlab.rearrange import (SampledFunction, decreasing_rearrangement, dirichlet_energy,
                                  equimeasurable, symmetric_decreasing_x)

samples = st.lists(st.floats(0, 10, allow_nan=False), min_size=1, max_size=60)


def sf(values, start=0.0, h=0.1):
    return SampledFunction(start, h, np.asarray(values, dtype=float))


def test_decreasing_examples():
    f = sf([5, 3, 3, 1, 0])
    assert np.array_equal(decreasing_rearrangement(f).values, f.values)
    assert np.array_equal(decreasing_rearrangement(sf([1, 3, 2])).values, [3, 2, 1])
    g = sf(np.random.default_rng(1).random(33))
    r = decreasing_rearrangement(g)
    for p in (2, 4, 6):
        assert r.lp_sum(p) == pytest.approx(g.lp_sum(p), rel=1e-15)


def test_symmetric_examples():
    f = sf([0, 1, 3, 1, 0], start=-0.2)
    assert np.array_equal(symmetric_decreasing_x(f).values, f.values)
    g = sf([0, 2, 1], start=-0.1)
    out = symmetric_decreasing_x(g).values
    assert out[1] == 2 and sorted(out) == [0, 1, 2]
    assert np.array_equal(out, [1, 2, 0])
    h = sf(np.random.default_rng(2).random(21), start=-1.0)
    assert symmetric_decreasing_x(h).lp_sum(6) == pytest.approx(h.lp_sum(6), rel=1e-15)


def test_negative_rejected():
    with pytest.raises(NegativeInput):
        decreasing_rearrangement(sf([1, -1]))
    with pytest.raises(NegativeInput):
        symmetric_decreasing_x(sf([1, -1]))


def test_sampled_function_validation():
    with pytest.raises(ValueError):
        SampledFunction(0.0, 0.0, np.ones(3))
    with pytest.raises(ValueError):
        SampledFunction(0.0, 1.0, np.array([1.0, np.inf]))
    s = SampledFunction.on_interval(-1, 1, [0, 1, 0])
    assert s.spacing == 1.0 and np.array_equal(s.grid, [-1, 0, 1])


def test_dirichlet_energy_value():
    f = sf([0, 1, 0], h=0.5)
    # interior differences (1, -1) and zero-extension jumps (0, 0): 2 / h
    assert dirichlet_energy(f, zero_left=False, zero_right=False) == pytest.approx(4.0)
    assert dirichlet_energy(sf([1.0]), True, True) == pytest.approx(2 / 0.1)


@given(samples)
def test_equimeasurable(values):
    f = sf(values)
    assert equimeasurable(f, decreasing_rearrangement(f))
    assert equimeasurable(f, symmetric_decreasing_x(f))


@given(samples)
def test_idempotent(values):
    f = sf(values)
    d = decreasing_rearrangement(f)
    assert np.array_equal(decreasing_rearrangement(d).values, d.values)
    s = symmetric_decreasing_x(f)
    assert np.array_equal(symmetric_decreasing_x(s).values, s.values)


@given(samples)
def test_symmetric_output_shape(values):
    out = symmetric_decreasing_x(sf(values)).values
    c = out.size // 2
    assert out[c] == out.max()
    assert np.all(np.diff(out[:c + 1]) >= 0) and np.all(np.diff(out[c:]) <= 0)
    # the left neighbour of each mirror pair is filled first
    left, right = out[:c][::-1], out[c + 1:]
    k = min(left.size, right.size)
    assert np.all(right[:k] <= left[:k])


@settings(max_examples=100)
@given(samples)
def test_polya_szego(values):
    f = sf(values)
    e0 = dirichlet_energy(f)
    assert dirichlet_energy(symmetric_decreasing_x(f)) <= e0 + 1e-12
    # a decreasing profile on [0, U] is extended evenly at 0 and by zero at U
    assert dirichlet_energy(decreasing_rearrangement(f), zero_left=False) <= e0 + 1e-12
