"""The operator L_s and its inverse I_s, a convolution with psi_s(d^2).

I_s G is evaluated at points z on the imaginary axis with d^2(z, i) = u0.
Around i we use geodesic polar coordinates w <-> (v, theta) with
v = d^2(w, i), in which dnu = 2 dv dtheta, so for radial G

    (I_s G)(u0) = int_0^inf G(v) [2 int_0^{2 pi} psi_s(d^2(z, w)) dtheta] dv.

d^2(z, w) follows from the law of cosines at i, and the theta integral has a
logarithmic singularity at theta = 0 when v = u0.  tanh-sinh nodes in theta
cluster at that endpoint.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .errors import NonConvergence, NonpositiveArgument
from .functionals import SpectralParams, TOL_1D, hyperbolic_quotient, lp_norm_radial
from .geometry import point_at_radius, radial_u, squared_distance
from .profiles import RadialProfile
from .quadrature import (
    DecayHint, _level_nodes, _segments, differentiate, integrate_halfline,
    integrate_interval, integrate_plane,
)
from .reports import CheckReport, QuotientReport
from .specialfn import beta as beta_fn, psi_hypergeometric

PI = math.pi
FOUR_PI = 4.0 * PI
THETA_LEVEL = 5
# tanh-sinh nodes closer than this to an end carry no usable weight
NODE_FLOOR = 1e-18


@dataclass(frozen=True)
class OperatorParams:
    """s together with optional Euler-Lagrange data c and B."""

    s: float
    c: float | None = None
    B: float | None = None

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(f"s must be > 0, got {self.s}")
        for name in ("c", "B"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                raise ValueError(f"{name} must be > 0 when set")

    @classmethod
    def euler_lagrange(cls, s, B=1.0):
        """c = s^2 B^(-1/s): then B(1+u)^-s solves L_s F = c F^(1+1/s)."""
        return cls(s, s * s * B ** (-1.0 / s), B)


def apply_Ls_radial(F, s, u):
    """-(d/du)[u(u+1) F'] + s(s-1) F."""
    u = np.asarray(u, dtype=float)
    d1 = F.d(u)
    if F.deriv2 is not None:
        d2 = F.d2(u)
    else:
        d2 = np.vectorize(lambda t: differentiate(lambda x: float(F.d(np.array(x))), t))(u)
    return -(2.0 * u + 1.0) * d1 - u * (u + 1.0) * d2 + s * (s - 1.0) * F(u)


# ------------------------------------------------------------------ theta rule

def theta_rule(level=THETA_LEVEL, full_circle=False):
    """tanh-sinh nodes on [0, pi] (or [0, 2 pi] split at pi)."""
    x, xc, dxdt = _level_nodes(level, full=True)
    keep = (x > NODE_FLOOR) & (xc > NODE_FLOOR)
    x, xc, dxdt = x[keep], xc[keep], dxdt[keep]
    h = 2.0 ** -level
    theta = np.where(x <= 0.5, PI * x, PI - PI * xc)
    w = PI * h * dxdt
    if full_circle:
        theta = np.concatenate((theta, 2.0 * PI - theta))
        w = np.concatenate((w, w))
    return theta, w


def angular_kernel(s, u0, v, level=THETA_LEVEL):
    """K(u0, v) = 4 int_0^pi psi_s(d^2) dtheta, shape (len(u0), len(v))."""
    theta, w = theta_rule(level)
    u0 = np.atleast_1d(np.asarray(u0, dtype=float))
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        v = np.broadcast_to(v, (u0.size, v.size))
    return 4.0 * kernels.radial_theta_sums(s, u0, v, theta, w)


def _check_s(s):
    if not s > 0:
        raise NonpositiveArgument(f"s must be > 0, got {s}")


def _v_hint(G, s, u0):
    breaks = tuple(G.hint.breaks) + ((u0,) if u0 > 0 else ())
    return DecayHint(decay=G.decay + s, support=G.hint.support, breaks=breaks)


def fractional_integral(G, s, u0, tol=1e-9, theta_level=THETA_LEVEL):
    """(I_s G)(z) for z on the imaginary axis with d^2(z, i) = u0.

    The outer v integral is adaptive with a break at u0; the theta rule is
    fixed at ``theta_level``, which is accurate to rounding for smooth G.
    """
    _check_s(s)
    u0 = float(u0)

    def f(v):
        return G(v) * angular_kernel(s, u0, v, theta_level)[0]

    hint = _v_hint(G, s, u0)
    lo, hi = (0.0, math.inf) if hint.support is None else hint.support
    return integrate_interval(f, lo, hi, tol, hint.replace(support=None)).value


def fractional_integral_offaxis(G, s, u0, tol=1e-9, theta_level=THETA_LEVEL):
    """Same value computed at z = (2 sqrt(u0), 1) in coordinates.

    The angular sum here places w in the plane explicitly and measures
    d^2(z, w) from coordinates, so agreement with ``fractional_integral``
    tests radiality of the output rather than assuming it.
    """
    _check_s(s)
    u0 = float(u0)
    z = point_at_radius(u0, x_sign=1)
    zc = complex(z.x, z.y)
    phiz = math.atan2(((zc - 1j) / (zc + 1j)).imag, ((zc - 1j) / (zc + 1j)).real)
    theta, w = theta_rule(theta_level, full_circle=True)

    def f(v):
        v = np.asarray(v, dtype=float)
        return 2.0 * G(v) * kernels.theta_sums(s, z.x, z.y, phiz, v, theta, w)

    hint = _v_hint(G, s, u0)
    lo, hi = (0.0, math.inf) if hint.support is None else hint.support
    return integrate_interval(f, lo, hi, tol, hint.replace(support=None)).value


def radiality_check(G, s, u0, tol=1e-6):
    a = fractional_integral(G, s, u0)
    b = fractional_integral_offaxis(G, s, u0)
    res = abs(a - b) / max(abs(a), abs(b), 1e-300)
    return CheckReport("radiality of I_s G", b, a, res, tol, res <= tol,
                       details={"u0": u0})


def group_form_check(G, s, u0, tol=1e-5):
    """I_s G at one point from a direct (x, y) quadrature of G * psi_s(d^2(z, w)) dnu.

    The group convolution int G(g.i) psi_s(d^2(g^-1 z, i)) dg with left Haar
    measure da db / b^2 reduces to this integral since d is invariant.
    """
    u0 = float(u0)
    z = point_at_radius(u0)
    xz, yz = z.x, z.y

    def f(x, y):
        x, y = np.broadcast_arrays(x, y)
        # beyond these scales the integrand is far below double precision
        ok = (y > 1e-30) & (y < 1e30) & (np.abs(x) < 1e30)
        xs, ys = np.where(ok, x, 0.0), np.where(ok, y, 1.0)
        d2 = np.maximum(squared_distance(xz, yz, xs, ys), 1e-300)
        vals = psi_hypergeometric(d2.ravel(), s).reshape(d2.shape)
        return np.where(ok, G(radial_u(xs, ys)) * vals / (ys * ys), 0.0)

    hx = DecayHint(symmetric=True)
    hy = DecayHint(breaks=(1.0, yz) if yz != 1.0 else (1.0,))
    direct = integrate_plane(f, hx, hy, tol=tol * 0.1, half_plane=True).value
    ref = fractional_integral(G, s, u0)
    res = abs(direct - ref) / abs(ref)
    return CheckReport("group-form cross-check", direct, ref, res, tol, res <= tol,
                       details={"u0": u0})


# ------------------------------------------------------------------ tabulated operator

class FractionalIntegral:
    """I_s tabulated on a fixed set of evaluation radii.

    For each radius u0 the v axis is split at u0 (and at 1) and covered by a
    tanh-sinh rule of ``v_level``; the kernel matrix is computed once and then
    applied to any radial G, which makes sweeps over many G cheap.
    """

    def __init__(self, s, u0, v_level=5, theta_level=THETA_LEVEL, v_cap=1e40, breaks=()):
        _check_s(s)
        self.s = float(s)
        self.u0 = np.atleast_1d(np.asarray(u0, dtype=float))
        x, xc, dxdt = _level_nodes(v_level, full=True)
        h = 2.0 ** -v_level
        rows_v, rows_w = [], []
        for a in self.u0:
            pts_all, w_all = [], []
            cuts = (1.0,) + tuple(breaks) + ((a,) if a > 0 else ())
            for seg in _segments(0.0, math.inf, cuts):
                pts, wts = seg.map(x, xc, dxdt)
                keep = (pts > 0) & (pts < v_cap) & (xc > NODE_FLOOR)
                if math.isfinite(seg.b):
                    keep &= x > NODE_FLOOR
                pts_all.append(pts[keep])
                w_all.append(h * wts[keep])
            rows_v.append(np.concatenate(pts_all))
            rows_w.append(np.concatenate(w_all))
        width = max(r.size for r in rows_v)
        self.v = np.ones((self.u0.size, width))
        self.weights = np.zeros((self.u0.size, width))
        for i, (pv, pw) in enumerate(zip(rows_v, rows_w)):
            self.v[i, :pv.size] = pv
            self.weights[i, :pw.size] = pw
        self.matrix = self.weights * angular_kernel(self.s, self.u0, self.v, theta_level)

    @classmethod
    def for_profile(cls, G, s, u0, **kw):
        """Operator whose v rule also breaks at G's support ends and breaks."""
        return cls(s, u0, breaks=_profile_breaks(G), **kw)

    def __call__(self, G):
        vals = np.nan_to_num(G(self.v), nan=0.0)
        return np.sum(self.matrix * vals, axis=1)


def _profile_breaks(G):
    cuts = list(G.hint.breaks)
    if G.hint.support is not None:
        cuts += [b for b in G.hint.support if 0 < b < math.inf]
    return tuple(cuts)


def _tabulate(G, s, u, method):
    if method == "table":
        return FractionalIntegral.for_profile(G, s, u)(G)
    return np.array([fractional_integral(G, s, a) for a in np.atleast_1d(u)])


def inversion_residual(G, s, grid, points_per_decade=32, method="table"):
    """max |L_s(I_s G) - G| / (1 + |G|) over ``grid``.

    I_s G is tabulated on a log grid that brackets ``grid`` by two decades
    and differentiated through a cubic spline in t = log u.
    """
    from scipy.interpolate import CubicSpline

    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise NonpositiveArgument("inversion grid must be in u > 0")
    lo = math.log10(grid.min()) - 2.0
    hi = math.log10(grid.max()) + 2.0
    n = int(round((hi - lo) * points_per_decade)) + 1
    t = np.linspace(lo, hi, n) * math.log(10.0)
    table = _tabulate(G, s, np.exp(t), method)
    spline = CubicSpline(t, table)
    tg = np.log(grid)
    Ft, Ftt = spline(tg, 1), spline(tg, 2)
    d1 = Ft / grid
    d2 = (Ftt - Ft) / grid ** 2
    ls = -(2.0 * grid + 1.0) * d1 - grid * (grid + 1.0) * d2 + s * (s - 1.0) * spline(tg)
    g = G(grid)
    return float(np.max(np.abs(ls - g) / (1.0 + np.abs(g))))


# ------------------------------------------------------------------ norms of I_s G

def _outer_rule(level=4, v_cap=1e40):
    x, xc, dxdt = _level_nodes(level, full=True)
    h = 2.0 ** -level
    pts_all, w_all = [], []
    for seg in _segments(0.0, math.inf, (1.0,)):
        pts, wts = seg.map(x, xc, dxdt)
        keep = (pts > 0) & (pts < v_cap) & (xc > NODE_FLOOR)
        if math.isfinite(seg.b):
            keep &= x > NODE_FLOOR
        pts_all.append(pts[keep])
        w_all.append(h * wts[keep])
    return np.concatenate(pts_all), np.concatenate(w_all)


class NormOperator:
    """u -> (I_s G)(u) on an outer tanh-sinh rule, for L^p(M) norms of I_s G.

    Build once per s and reuse for many smooth G (sweeps); profiles with
    breaks or compact support should get their own via ``for_profile``.
    """

    def __init__(self, s, level=4, breaks=()):
        self.s = float(s)
        self.u, self.weights = _outer_rule(level)
        self.operator = FractionalIntegral(s, self.u, breaks=breaks)

    @classmethod
    def for_profile(cls, G, s, level=4):
        return cls(s, level, _profile_breaks(G))

    def norm(self, G, p):
        vals = self.operator(G)
        return (FOUR_PI * float(np.sum(self.weights * np.abs(vals) ** p))) ** (1.0 / p)


def potential_lp_norm(G, s, p, level=4, operator=None):
    """||I_s G||_{L^p(M)}."""
    op = operator or NormOperator.for_profile(G, s, level)
    return op.norm(G, p)


def hls_quotient(G, s, level=4, tol=TOL_1D, operator=None):
    """||I_s G||_p / ||G||_q against A_p with p = 2 + 1/s and q = p'."""
    prm = SpectralParams(s)
    lhs = potential_lp_norm(G, s, prm.p, level, operator)
    rhs = lp_norm_radial(G, prm.q, tol)
    return QuotientReport.build(lhs, rhs, 0.0, 0.0, prm.A_p, rhs=rhs,
                                label=f"HLS s={s:g}: {G.label}")


def quadratic_form_Ls(F, s, tol=TOL_1D):
    """int_M F (L_s F) dnu with L_s applied pointwise (no integration by parts)."""
    integrand = lambda u: F(u) * apply_Ls_radial(F, s, u)  # noqa: E731
    hint = DecayHint(decay=2.0 * F.decay, support=F.hint.support, breaks=F.hint.breaks)
    lo, hi = (0.0, math.inf) if hint.support is None else hint.support
    return FOUR_PI * integrate_interval(integrand, lo, hi, tol,
                                        hint.replace(support=None)).value


def hls_dual_check(s=2.0, tol=1e-6):
    """Dual form at F = (1+u)^-s: A_p int F L_s F against the A_p-form of hyperbolic_quotient."""
    from .profiles import make_power_law

    F = make_power_law(s)
    prm = SpectralParams(s)
    direct = prm.A_p * quadratic_form_Ls(F, s)
    q = hyperbolic_quotient(F, prm)
    by_parts = prm.A_p * q.rhs
    res = abs(direct - by_parts) / abs(by_parts)
    return CheckReport("HLS dual form", direct, by_parts, res, tol, res <= tol,
                       details={"lhs": q.lhs, "quotient": q.quotient, "A_p": prm.A_p})


# ------------------------------------------------------------------ Young

def young_weight_norm(s, tol=1e-6):
    """|| y^(1/p) psi_s ||_{L^(p/2)(M)} with psi_s centred at i."""
    p = SpectralParams(s).p
    e = 0.5 * p

    def f(x, y):
        x, y = np.broadcast_arrays(x, y)
        ok = (y > 1e-30) & (y < 1e30) & (np.abs(x) < 1e30)
        xs, ys = np.where(ok, x, 0.0), np.where(ok, y, 1.0)
        u = np.maximum(radial_u(xs, ys), 1e-300)
        vals = psi_hypergeometric(u.ravel(), s).reshape(u.shape)
        return np.where(ok, np.abs(vals) ** e * ys ** -1.5, 0.0)

    val = integrate_plane(f, DecayHint(symmetric=True), DecayHint(breaks=(1.0,)),
                          tol=tol, half_plane=True).value
    return val ** (1.0 / e)


def young_bound_check(G, s, level=4, tol=1e-6, operator=None):
    """||I_s G||_p <= ||G||_q ||y^(1/p) psi_s||_(p/2)."""
    prm = SpectralParams(s)
    lhs = potential_lp_norm(G, s, prm.p, level, operator)
    gq = lp_norm_radial(G, prm.q)
    weight = young_weight_norm(s)
    rhs = gq * weight
    return CheckReport("Young bound", lhs, rhs, max(0.0, lhs - rhs), tol, lhs <= rhs + tol,
                       details={"weight_norm": weight, "G_q_norm": gq,
                                "y_integral": beta_fn(s, s)})
