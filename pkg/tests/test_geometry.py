import math

from hypothesis import example, given, strategies as st
import pytest

from grushinlab.errors import InvalidPoint
from grushinlab.geometry import (IDENTITY, ORIGIN, GroupElement, HalfPlanePoint, act, distance,
                                 group_multiply, modular_function, squared_distance_to_origin)

coord = st.floats(-50, 50)
height = st.floats(1e-3, 1e3)


def test_distance_examples():
    i = HalfPlanePoint(0, 1)
    assert distance(i, i) == 0
    assert distance(i, HalfPlanePoint(0, 4)) == pytest.approx(0.75, rel=1e-15)
    p = HalfPlanePoint(1, 2)
    assert distance(p, p) == 0


def test_squared_distance_to_origin():
    assert squared_distance_to_origin(ORIGIN) == 0
    assert squared_distance_to_origin(HalfPlanePoint(0, 4)) == pytest.approx(9 / 16, rel=1e-15)
    assert squared_distance_to_origin(HalfPlanePoint(3, 1)) == pytest.approx(9 / 4, rel=1e-15)


def test_group_multiply():
    h = GroupElement(2.5, 0.3)
    assert group_multiply(IDENTITY, h) == h
    assert group_multiply(GroupElement(1, 2), GroupElement(3, 4)) == GroupElement(7, 8)
    g = GroupElement(1.5, 2.0)
    e = group_multiply(g, GroupElement(-g.x / g.y, 1 / g.y))
    assert e.x == pytest.approx(0) and e.y == pytest.approx(1)


def test_act():
    z = HalfPlanePoint(0.3, 1.7)
    assert act(IDENTITY, z) == z
    assert act(GroupElement(0, 4), ORIGIN) == HalfPlanePoint(0, 4)
    g, z, w = GroupElement(1, 2), HalfPlanePoint(0, 1), HalfPlanePoint(3, 5)
    assert abs(distance(act(g, z), act(g, w)) - distance(z, w)) < 1e-12


def test_modular_function():
    assert modular_function(IDENTITY) == 1
    assert modular_function(GroupElement(5, 2)) == 0.5
    g, h = GroupElement(1, 2), GroupElement(3, 4)
    assert modular_function(group_multiply(g, h)) == pytest.approx(1 / 8)
    assert modular_function(g) * modular_function(h) == pytest.approx(1 / 8)


@pytest.mark.parametrize("y", [0.0, -1.0, math.nan])
def test_invalid_points_rejected(y):
    with pytest.raises(InvalidPoint):
        HalfPlanePoint(0.0, y)
    with pytest.raises(InvalidPoint):
        GroupElement(0.0, y)


@given(coord, height, coord, height, coord, height)
@example(16.0, 1e-3, 0.0, 0.5, 1.0, 0.5)
def test_isometry(gx, gy, zx, zy, wx, wy):
    g, z, w = GroupElement(gx, gy), HalfPlanePoint(zx, zy), HalfPlanePoint(wx, wy)
    d = distance(z, w)
    # translating by gx after scaling by gy cancels digits in x_z - x_w
    sep = math.hypot(zx - wx, zy - wy)
    cancel = 1.0 + (abs(gx) + gy * max(abs(zx), abs(wx))) / (gy * sep) if sep > 0 else 1.0
    assert abs(distance(act(g, z), act(g, w)) - d) <= 1e-12 * cancel * max(1.0, d)


@given(coord, height, coord, height, coord, height)
def test_group_laws(ax, ay, bx, by, cx, cy):
    a, b, c = GroupElement(ax, ay), GroupElement(bx, by), GroupElement(cx, cy)
    left = group_multiply(group_multiply(a, b), c)
    right = group_multiply(a, group_multiply(b, c))
    assert left.y == pytest.approx(right.y, rel=1e-12)
    assert left.x == pytest.approx(right.x, rel=1e-9, abs=1e-9)
    assert modular_function(group_multiply(a, b)) == pytest.approx(
        modular_function(a) * modular_function(b), rel=1e-12)
