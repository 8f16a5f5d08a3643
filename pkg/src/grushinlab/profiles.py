"""Test functions: radial profiles in u = d^2(z, i), Grushin profiles f(x, t),
and general profiles on the half-plane.

Every profile carries exact derivatives; nothing downstream differentiates
numerically.  Callables take and return numpy arrays.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import NonpositiveExponent, NonpositiveWidth
from .quadrature import DecayHint


# ------------------------------------------------------------------ radial

@dataclass(frozen=True)
class RadialProfile:
    """F(u) on [0, inf) with F', optionally F'', and a decay description.

    ``hint.decay`` is sigma in F ~ u**(-sigma); ``deriv_decay`` the same for
    F' (defaults to sigma + 1).  ``limit_at_infinity`` is used when the
    profile has to be evaluated at u = inf (variable inversion).
    """

    value: object
    deriv: object
    hint: DecayHint = DecayHint()
    deriv2: object = None
    deriv_decay: float | None = None
    limit_at_infinity: float | None = None
    label: str = ""

    def __call__(self, u):
        return self.value(np.asarray(u, dtype=float))

    def d(self, u):
        return self.deriv(np.asarray(u, dtype=float))

    def d2(self, u):
        if self.deriv2 is None:
            raise NotImplementedError(f"{self.label or 'profile'} has no second derivative")
        return self.deriv2(np.asarray(u, dtype=float))

    @property
    def decay(self):
        return self.hint.decay

    @property
    def ddecay(self):
        if self.deriv_decay is not None:
            return self.deriv_decay
        return self.hint.decay + 1.0

    @property
    def at_infinity(self):
        if self.limit_at_infinity is not None:
            return self.limit_at_infinity
        if self.hint.decay > 0 or self.hint.support is not None:
            return 0.0
        return None

    def scaled(self, c):
        return replace(
            self,
            value=lambda u, f=self.value: c * f(u),
            deriv=lambda u, f=self.deriv: c * f(u),
            deriv2=None if self.deriv2 is None else (lambda u, f=self.deriv2: c * f(u)),
            limit_at_infinity=None if self.limit_at_infinity is None else c * self.limit_at_infinity,
            label=f"{c:g}*{self.label}",
        )


def _check_positive(alpha, name="exponent"):
    if not alpha > 0:
        raise NonpositiveExponent(f"{name} must be > 0, got {alpha}")


def make_power_law(alpha, amplitude=1.0):
    """amplitude * (1 + u)^(-alpha)."""
    _check_positive(alpha)
    a = float(alpha)
    c = float(amplitude)
    return RadialProfile(
        value=lambda u: c * (1.0 + u) ** -a,
        deriv=lambda u: -a * c * (1.0 + u) ** (-a - 1.0),
        deriv2=lambda u: a * (a + 1.0) * c * (1.0 + u) ** (-a - 2.0),
        hint=DecayHint(decay=a),
        label=f"(1+u)^-{a:g}" if c == 1.0 else f"{c:g}(1+u)^-{a:g}",
    )


def make_constant(c=1.0):
    c = float(c)
    return RadialProfile(
        value=lambda u: np.full_like(np.asarray(u, dtype=float), c),
        deriv=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
        deriv2=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
        hint=DecayHint(decay=0.0),
        deriv_decay=math.inf,
        limit_at_infinity=c,
        label=f"const {c:g}",
    )


def _bump_parts(r):
    # phi(r) = exp(1 - 1/(1 - r^2)) on |r| < 1 and its first two r-derivatives
    r = np.asarray(r, dtype=float)
    inside = np.abs(r) < 1.0
    rr = np.where(inside, r, 0.0)
    one = 1.0 - rr * rr
    phi = np.where(inside, np.exp(1.0 - 1.0 / one), 0.0)
    q = -2.0 * rr / one ** 2
    dq = -2.0 / one ** 2 - 8.0 * rr * rr / one ** 3
    d1 = np.where(inside, phi * q, 0.0)
    d2 = np.where(inside, phi * (q * q + dq), 0.0)
    return phi, d1, d2


def make_bump(center, width, amplitude=1.0):
    """Smooth bump amplitude * phi((u - center) / width), support center +- width."""
    if not width > 0:
        raise NonpositiveWidth(f"width must be > 0, got {width}")
    c, w, a = float(center), float(width), float(amplitude)
    lo, hi = max(0.0, c - w), c + w
    if hi <= 0.0:
        raise NonpositiveWidth("bump support lies entirely in u < 0")
    return RadialProfile(
        value=lambda u: a * _bump_parts((u - c) / w)[0],
        deriv=lambda u: a * _bump_parts((u - c) / w)[1] / w,
        deriv2=lambda u: a * _bump_parts((u - c) / w)[2] / (w * w),
        hint=DecayHint(support=(lo, hi), breaks=(c,) if lo < c < hi else ()),
        deriv_decay=math.inf,
        label=f"bump(c={c:g}, w={w:g})",
    )


BUMP_INTEGRAL = 1.2069003224378762
"""Integral of exp(1 - 1/(1 - r^2)) over r in (-1, 1)."""


def unit_mass_bump(width):
    """Bump at u = 0 with total hyperbolic mass 4 pi int F du = 1."""
    half = 0.5 * BUMP_INTEGRAL * width
    return make_bump(0.0, width, amplitude=1.0 / (4.0 * math.pi * half))


def make_exponential(rate=1.0, amplitude=1.0):
    """amplitude * exp(-rate u), a Gaussian in the geodesic radius."""
    _check_positive(rate, "rate")
    k, c = float(rate), float(amplitude)
    return RadialProfile(
        value=lambda u: c * np.exp(-k * u),
        deriv=lambda u: -k * c * np.exp(-k * u),
        deriv2=lambda u: k * k * c * np.exp(-k * u),
        hint=DecayHint(),
        deriv_decay=math.inf,
        label=f"exp(-{k:g}u)",
    )


def make_sampled(u, values):
    """Monotone cubic (PCHIP) interpolant of samples, zero beyond the grid."""
    from scipy.interpolate import PchipInterpolator

    u = np.asarray(u, dtype=float)
    values = np.asarray(values, dtype=float)
    spline = PchipInterpolator(u, values, extrapolate=False)
    dspline = spline.derivative()
    d2spline = dspline.derivative()

    def _clean(fn):
        return lambda x: np.nan_to_num(fn(np.asarray(x, dtype=float)), nan=0.0)

    return RadialProfile(
        value=_clean(spline),
        deriv=_clean(dspline),
        deriv2=_clean(d2spline),
        hint=DecayHint(support=(float(u[0]), float(u[-1])), breaks=tuple(u[1:-1])),
        deriv_decay=math.inf,
        label="sampled",
    )


# ------------------------------------------------------------------ Grushin

@dataclass(frozen=True)
class GrushinProfile:
    """f(x, t) for the Grushin forms.

    dimension 2: t is a real variable; dimension 3: t is the radius |t| of
    t in R^2.  ``fx`` and ``ft`` are the exact partial derivatives.
    ``parabolic`` asks the integrators to work in x = (1 + t^2) xi, which
    suits profiles whose x-width grows like t^2.
    """

    dimension: int
    value: object
    fx: object
    ft: object
    hint_x: DecayHint = DecayHint(symmetric=True)
    hint_t: DecayHint = DecayHint(symmetric=True)
    label: str = ""
    parabolic: bool = True

    def __call__(self, x, t):
        return self.value(x, t)


def _check_dim(dimension):
    if dimension not in (2, 3):
        raise ValueError("dimension must be 2 or 3")


def make_grushin_extremal(dimension, gamma, a=1.0, b=1.0):
    """[(1 + a t^2)^2 + b x^2]^(-gamma); a = b = 1 gives the extremal family."""
    _check_dim(dimension)
    _check_positive(gamma)
    g = float(gamma)

    def P(x, t):
        return (1.0 + a * t * t) ** 2 + b * x * x

    return GrushinProfile(
        dimension=dimension,
        value=lambda x, t: P(x, t) ** -g,
        fx=lambda x, t: -2.0 * g * b * x * P(x, t) ** (-g - 1.0),
        ft=lambda x, t: -4.0 * g * a * t * (1.0 + a * t * t) * P(x, t) ** (-g - 1.0),
        label=f"grushin_extremal(d={dimension}, gamma={g:g})",
    )


def make_grushin_gaussian(dimension, a=1.0, b=1.0):
    """exp(-a x^2 - b t^2)."""
    _check_dim(dimension)

    def e(x, t):
        return np.exp(-a * x * x - b * t * t)

    return GrushinProfile(
        dimension=dimension,
        value=e,
        fx=lambda x, t: -2.0 * a * x * e(x, t),
        ft=lambda x, t: -2.0 * b * t * e(x, t),
        label=f"gaussian(d={dimension}, a={a:g}, b={b:g})",
    )


def make_grushin_product(dimension, alpha, beta):
    """(1 + x^2)^(-alpha) (1 + t^2)^(-beta)."""
    _check_dim(dimension)
    _check_positive(alpha)
    _check_positive(beta)

    def px(x):
        return (1.0 + x * x) ** -alpha

    def pt(t):
        return (1.0 + t * t) ** -beta

    return GrushinProfile(
        dimension=dimension,
        value=lambda x, t: px(x) * pt(t),
        fx=lambda x, t: -2.0 * alpha * x * (1.0 + x * x) ** (-alpha - 1.0) * pt(t),
        ft=lambda x, t: -2.0 * beta * t * (1.0 + t * t) ** (-beta - 1.0) * px(x),
        # slowest integrand tails: f_t^2 in x and t^2 f_x^2 in t, one power
        # less in R^3 for the t-radial measure
        hint_x=DecayHint(decay=4.0 * alpha, symmetric=True),
        hint_t=DecayHint(decay=4.0 * beta - 2.0 - (dimension - 2), symmetric=True),
        label=f"product(d={dimension}, {alpha:g}, {beta:g})",
        parabolic=False,
    )


def rescale_grushin(f, lam):
    """x -> lam^2 x, t -> lam t, the dilation matched to the Grushin operator."""
    l1, l2 = float(lam), float(lam) ** 2
    return replace(
        f,
        value=lambda x, t: f.value(l2 * x, l1 * t),
        fx=lambda x, t: l2 * f.fx(l2 * x, l1 * t),
        ft=lambda x, t: l1 * f.ft(l2 * x, l1 * t),
        label=f"{f.label} rescaled by {lam:g}",
    )


def zero_grushin(dimension):
    z = lambda x, t: np.zeros(np.broadcast(x, t).shape)  # noqa: E731
    return GrushinProfile(dimension, z, z, z, label="zero")


# ------------------------------------------------------------------ half-plane

@dataclass(frozen=True)
class HalfPlaneProfile:
    """F(x, y) on the upper half-plane with partials F_x, F_y."""

    value: object
    fx: object
    fy: object
    hint_x: DecayHint = DecayHint()
    hint_y: DecayHint = DecayHint()
    label: str = ""
    fy_shift: object = None

    def __call__(self, x, y):
        return self.value(x, y)

    def fy_minus(self, x, y, alpha):
        """F_y - alpha F / y, from the closed form when one is supplied.

        For F = y^a f(x, sqrt(y)) the two terms cancel to leading order as
        y -> 0, so lifted profiles supply the simplified expression.
        """
        if self.fy_shift is not None:
            return self.fy_shift(x, y, alpha)
        return self.fy(x, y) - alpha * self.value(x, y) / y


def lift_radial(F):
    """The half-plane function z -> F(d^2(z, i)) with chain-rule partials."""

    def u(x, y):
        return (x * x + (y - 1.0) ** 2) / (4.0 * y)

    hint_x = DecayHint(symmetric=True)
    hint_y = DecayHint(breaks=(1.0,))
    if F.hint.support is not None:
        # u <= U  <=>  |x| <= 2 sqrt(U y) and y in [y-, y+]
        umax = F.hint.support[1]
        yl = 1.0 + 2.0 * umax - 2.0 * math.sqrt(umax * (1.0 + umax))
        yh = 1.0 + 2.0 * umax + 2.0 * math.sqrt(umax * (1.0 + umax))
        xh = 2.0 * math.sqrt(umax * yh)
        hint_x = DecayHint(support=(-xh, xh), breaks=(0.0,))
        hint_y = DecayHint(support=(yl, yh), breaks=(1.0,))
    return HalfPlaneProfile(
        value=lambda x, y: F(u(x, y)),
        fx=lambda x, y: F.d(u(x, y)) * x / (2.0 * y),
        fy=lambda x, y: F.d(u(x, y)) * (y * y - 1.0 - x * x) / (4.0 * y * y),
        hint_x=hint_x,
        hint_y=hint_y,
        label=f"lift({F.label})",
    )


def make_plane_bump(x0, y0, wx, wy, amplitude=1.0):
    """Separable bump phi((x - x0)/wx) phi((y - y0)/wy) supported in y > 0."""
    if not (wx > 0 and wy > 0):
        raise NonpositiveWidth("bump widths must be > 0")
    if not y0 - wy > 0:
        raise NonpositiveWidth("bump support must stay inside the open half-plane")
    a = float(amplitude)

    def parts(x, y):
        px, dpx, _ = _bump_parts((x - x0) / wx)
        py, dpy, _ = _bump_parts((y - y0) / wy)
        return px, dpx, py, dpy

    def value(x, y):
        px, _, py, _ = parts(x, y)
        return a * px * py

    def fx(x, y):
        _, dpx, py, _ = parts(x, y)
        return a * dpx * py / wx

    def fy(x, y):
        px, _, _, dpy = parts(x, y)
        return a * px * dpy / wy

    return HalfPlaneProfile(
        value, fx, fy,
        hint_x=DecayHint(support=(x0 - wx, x0 + wx), breaks=(x0,)),
        hint_y=DecayHint(support=(y0 - wy, y0 + wy), breaks=(y0,)),
        label=f"plane_bump({x0:g},{y0:g},{wx:g},{wy:g})",
    )
