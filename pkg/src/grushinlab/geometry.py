"""Poincare upper half-plane and the ax+b group acting on it."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidPoint


@dataclass(frozen=True)
class HalfPlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0 and math.isfinite(self.y) and math.isfinite(self.x)):
            raise InvalidPoint(f"half-plane point needs finite x and y > 0, got ({self.x}, {self.y})")

    @property
    def z(self):
        return complex(self.x, self.y)


ORIGIN = HalfPlanePoint(0.0, 1.0)


@dataclass(frozen=True)
class GroupElement:
    """Element (x, y) of the ax+b group, acting by z -> x + y z."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0 and math.isfinite(self.y) and math.isfinite(self.x)):
            raise InvalidPoint(f"group element needs finite x and y > 0, got ({self.x}, {self.y})")

    def inverse(self):
        return GroupElement(-self.x / self.y, 1.0 / self.y)

    def matrix(self):
        r = math.sqrt(self.y)
        return np.array([[r, self.x / r], [0.0, 1.0 / r]])


IDENTITY = GroupElement(0.0, 1.0)


def distance(z, w):
    """d(z, w) = |z - w| / (2 sqrt(y_z y_w))."""
    return math.hypot(z.x - w.x, z.y - w.y) / (2.0 * math.sqrt(z.y * w.y))


def squared_distance(x1, y1, x2, y2):
    """Vectorized d^2 between coordinate arrays."""
    return ((x1 - x2) ** 2 + (y1 - y2) ** 2) / (4.0 * y1 * y2)


def radial_u(x, y):
    """u = d^2((x, y), i) for arrays."""
    return (x * x + (y - 1.0) ** 2) / (4.0 * y)


def squared_distance_to_origin(z):
    return float(radial_u(z.x, z.y))


def point_at_radius(u, x_sign=0.0):
    """A point with d^2(z, i) = u; on the imaginary axis above i by default.

    With ``x_sign`` nonzero the point is instead taken on the horizontal
    line y = 1 (x of that sign), which is a genuinely different point at
    the same distance.
    """
    if u < 0:
        raise InvalidPoint("u must be >= 0")
    if x_sign == 0.0:
        return HalfPlanePoint(0.0, 1.0 + 2.0 * u + 2.0 * math.sqrt(u * (1.0 + u)))
    return HalfPlanePoint(math.copysign(2.0 * math.sqrt(u), x_sign), 1.0)


def group_multiply(g, h):
    return GroupElement(g.x + g.y * h.x, g.y * h.y)


def act(g, z):
    return HalfPlanePoint(g.x + g.y * z.x, g.y * z.y)


def modular_function(g):
    return 1.0 / g.y


def element_for(z):
    """The unique group element carrying i to z."""
    return GroupElement(z.x, z.y)
