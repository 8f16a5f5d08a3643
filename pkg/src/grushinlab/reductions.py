"""Changes of variables used to move between the inequalities.

Transforms return new profiles whose derivatives are chained analytically.
The ``*_report`` functions evaluate both sides of an identity with separate
quadratures and return the residuals.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from . import kernels
from .errors import GridTooCoarse
from .functionals import (
    L6_INVERTED, L6_PEELED, L6_W, HYPERBOLIC_L6, GRUSHIN_2D_CONSTANT, TOL_1D, TOL_2D, evaluate_halfline,
    grushin_integrals_2d, grushin_integrals_3d, lp_integral_plane, radial_form,
    small_s_chain, weighted_form,
)
from .profiles import HalfPlaneProfile, RadialProfile
from .quadrature import DecayHint, integrate_halfline, integrate_interval
from .reports import CheckReport

PI = math.pi
_INV_FLOOR = 1e-100


@dataclass(frozen=True)
class ReductionReport:
    name: str
    norm_identity_residual: float
    form_identity_residual: float
    tolerance: float
    details: dict

    @property
    def passed(self):
        return (self.norm_identity_residual <= self.tolerance
                and self.form_identity_residual <= self.tolerance)

    def __bool__(self):
        return self.passed


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


# ------------------------------------------------------------------ radial transforms

def peel_power(F, alpha):
    """G(u) = (1 + u)^alpha F(u)."""
    a = float(alpha)

    def value(u):
        return (1.0 + u) ** a * F(u)

    def deriv(u):
        return a * (1.0 + u) ** (a - 1.0) * F(u) + (1.0 + u) ** a * F.d(u)

    deriv2 = None
    if F.deriv2 is not None:
        def deriv2(u):
            return (a * (a - 1.0) * (1.0 + u) ** (a - 2.0) * F(u)
                    + 2.0 * a * (1.0 + u) ** (a - 1.0) * F.d(u)
                    + (1.0 + u) ** a * F.d2(u))

    hint = F.hint.replace(decay=F.decay - a)
    return RadialProfile(value, deriv, hint, deriv2,
                         deriv_decay=min(F.decay - a + 1.0, F.ddecay - a),
                         label=f"(1+u)^{a:g} * {F.label}")


def invert_variable(G):
    """H(u) = G(1/u), with H(0) the limit of G at infinity.

    Below ``_INV_FLOOR`` the derivatives follow the power law implied by the
    decay of G' so that 1/u never overflows.
    """
    g_inf = G.at_infinity
    k = G.ddecay

    def _safe(u):
        u = np.asarray(u, dtype=float)
        pos = u > 0
        uc = np.maximum(u, _INV_FLOOR)
        return u, pos, 1.0 / uc, np.where(u < _INV_FLOOR, u / _INV_FLOOR, 1.0)

    def _tail(ratio, power):
        if math.isinf(k):
            return np.where(ratio < 1.0, 0.0, 1.0)
        with np.errstate(divide="ignore"):
            return ratio ** power

    def value(u):
        u, pos, inv, _ = _safe(u)
        return np.where(pos, G(inv), np.nan if g_inf is None else g_inf)

    def deriv(u):
        u, pos, inv, ratio = _safe(u)
        return np.where(pos, -G.d(inv) * inv * inv * _tail(ratio, k - 2.0), 0.0)

    deriv2 = None
    if G.deriv2 is not None:
        def deriv2(u):
            u, pos, inv, ratio = _safe(u)
            core = G.d2(inv) * inv ** 4 + 2.0 * G.d(inv) * inv ** 3
            return np.where(pos, core * _tail(ratio, k - 3.0), 0.0)

    support = None
    if G.hint.support is not None:
        lo, hi = G.hint.support
        support = (1.0 / hi, math.inf if lo == 0 else 1.0 / lo)
        if math.isinf(support[1]):
            support = None
    hint = DecayHint(decay=0.0, support=support,
                     breaks=tuple(1.0 / b for b in G.hint.breaks if b > 0))
    return RadialProfile(value, deriv, hint, deriv2, deriv_decay=2.0,
                         limit_at_infinity=float(G(np.array([0.0]))[0]),
                         label=f"{G.label}(1/u)")


def w_map(u):
    """w = u + sqrt(u (1 + u)); then sqrt(u/(1+u)) = w/(1+w)."""
    u = np.asarray(u, dtype=float)
    return u + np.sqrt(u * (1.0 + u))


def w_map_inverse(w):
    w = np.asarray(w, dtype=float)
    return w * w / (1.0 + 2.0 * w)


def w_map_transform(H):
    """G(w) = H(u(w)), the change of variables (1+w)^-2 dw = u^-1/2 (1+u)^-3/2 du / 2."""

    def value(w):
        return H(w_map_inverse(w))

    def deriv(w):
        w = np.asarray(w, dtype=float)
        return H.d(w_map_inverse(w)) * 2.0 * w * (1.0 + w) / (1.0 + 2.0 * w) ** 2

    return RadialProfile(value, deriv, H.hint.replace(breaks=(), support=None),
                         deriv_decay=H.ddecay, limit_at_infinity=H.limit_at_infinity,
                         label=f"{H.label} in w")


def beta_w_map(u, beta):
    """w with w/(1+w) = (u/(1+u))^beta, computed without cancellation."""
    u = np.asarray(u, dtype=float)
    b = float(beta)
    with np.errstate(divide="ignore"):
        log_rho = -b * np.log1p(1.0 / np.where(u > 0, u, 1.0))
        w = np.exp(log_rho) / -np.expm1(log_rho)
    return np.where(u > 0, w, 0.0)


def beta_w_inverse(w, beta):
    return beta_w_map(w, 1.0 / beta)


def beta_du_dw(w, beta):
    """du/dw from (1+w)^-2 dw = beta (1+u)^(-beta-1) u^(beta-1) du."""
    w = np.asarray(w, dtype=float)
    b = float(beta)
    u = beta_w_inverse(w, b)
    with np.errstate(divide="ignore"):
        log_val = ((b + 1.0) * np.log1p(u) + (1.0 - b) * np.log(np.where(u > 0, u, 1.0))
                   - math.log(b) - 2.0 * np.log1p(w))
    out = np.exp(log_val)
    if b != 1.0:
        # u ~ w^(1/b) near 0, so du/dw ~ w^(1/b - 1)/b
        out = np.where(u > 0, out, 0.0 if b < 1.0 else np.inf)
    return out


def beta_w_transform(H, beta):
    """G(w) = H(u(w)) under the beta-map."""
    b = float(beta)

    def value(w):
        return H(beta_w_inverse(w, b))

    def deriv(w):
        return H.d(beta_w_inverse(w, b)) * beta_du_dw(w, b)

    return RadialProfile(value, deriv, H.hint.replace(breaks=(), support=None),
                         deriv_decay=H.ddecay, limit_at_infinity=H.limit_at_infinity,
                         label=f"{H.label} in w (beta={b:g})")


def stereographic_match(w):
    """Polar angle with cos(theta) = (1 - w)/(1 + w), as 2 arctan(sqrt(w))."""
    return 2.0 * np.arctan(np.sqrt(np.asarray(w, dtype=float)))


# ------------------------------------------------------------------ identity checks

def w_measure_identity(u_end=1.0, tol=1e-12):
    """|int_0^w(U) (1+w)^-2 dw - (1/2) int_0^U u^-1/2 (1+u)^-3/2 du|."""
    w_end = float(w_map(u_end))
    a = integrate_interval(lambda w: (1.0 + w) ** -2, 0.0, w_end, tol).value
    b = 0.5 * integrate_interval(lambda u: u ** -0.5 * (1.0 + u) ** -1.5, 0.0, u_end, tol,
                                 DecayHint(singularity="algebraic", exponent=-0.5)).value
    return abs(a - b)


def beta_measure_identity(beta, u_range=(1.0, 2.0), tol=1e-12):
    lo, hi = u_range
    w_lo, w_hi = (float(beta_w_map(v, beta)) for v in (lo, hi))
    a = integrate_interval(lambda w: (1.0 + w) ** -2, w_lo, w_hi, tol).value
    b = beta * integrate_interval(lambda u: (1.0 + u) ** (-beta - 1.0) * u ** (beta - 1.0),
                                  lo, hi, tol).value
    return abs(a - b)


def inversion_integral_identity(phi, decay, tol=TOL_1D):
    """|int_0^inf phi(u) du - int_0^inf phi(1/u) u^-2 du| for a given integrand."""
    a = integrate_halfline(phi, DecayHint(decay=decay), tol).value

    def flipped(u):
        # below 1e-150 the clamp changes nothing at double precision
        u = np.maximum(np.asarray(u, dtype=float), 1e-150)
        return phi(1.0 / u) / (u * u)

    b = integrate_halfline(flipped, DecayHint(decay=2.0), tol).value
    return abs(a - b)


def stereographic_identity(G, tol=1e-11):
    """|int w G'(w)^2 dw - (1/2) int (dG/dtheta)^2 sin(theta) dtheta|."""
    lhs = integrate_halfline(lambda w: w * G.d(w) ** 2,
                             DecayHint(decay=2.0 * G.ddecay - 1.0), tol).value

    def theta_side(th):
        w = np.tan(0.5 * th) ** 2
        dw = np.tan(0.5 * th) / np.cos(0.5 * th) ** 2
        return 0.5 * (G.d(w) * dw) ** 2 * np.sin(th)

    rhs = integrate_interval(theta_side, 0.0, PI, tol).value
    return abs(lhs - rhs)


def bernoulli_check(r, w_grid=None):
    """(1 + w)^r >= 1 + r w on a log grid, and the weight comparison it implies.

    With beta = 1/r the reflected gradient weight 4[(1+w)^(1/beta) - 1] is
    compared pointwise with (4/beta) w.  Both hold exactly when r >= 1 and
    fail for large w when r < 1.
    """
    if w_grid is None:
        w_grid = np.concatenate(([0.0], np.logspace(-6, 4, 401)))
    w = np.asarray(w_grid, dtype=float)
    power = np.exp(r * np.log1p(w))
    scale = 1.0 + r * w
    worst = float(np.min((power - scale) / scale))
    weight = 4.0 * np.expm1(r * np.log1p(w))
    worst_weight = float(np.min((weight - 4.0 * r * w) / (4.0 * scale)))
    ok = worst >= -1e-14 and worst_weight >= -1e-14
    return CheckReport(
        name=f"Bernoulli r={r:g}",
        value=min(worst, worst_weight),
        target=0.0,
        residual=max(0.0, -min(worst, worst_weight)),
        tolerance=1e-14,
        passed=ok,
        details={"bernoulli_margin": worst, "weight_margin": worst_weight,
                 "w_max": float(w.max())},
    )


# ------------------------------------------------------------------ chains

def l6_chain(F, tol=TOL_1D):
    """Normalized quotients of the L6 family along peel -> invert -> w-map.

    F must have finite energy; the four numbers agree when the changes of
    variables are carried out correctly.
    """
    G = peel_power(F, 0.25)
    H = invert_variable(G)
    Gw = w_map_transform(H)
    out = {
        "radial": evaluate_halfline(F, radial_form(HYPERBOLIC_L6), tol),
        "peeled": evaluate_halfline(G, L6_PEELED, tol),
        "inverted": evaluate_halfline(H, L6_INVERTED, tol),
        "w": evaluate_halfline(Gw, L6_W, tol),
    }
    return out


def small_s_chain_quotients(g, s, tol=TOL_1D):
    """Normalized quotients along radial -> peel(s) -> invert -> beta-map -> reflect."""
    desc = small_s_chain(s)
    beta = 2.0 * s
    h = peel_power(g, s)
    H = invert_variable(h)
    G = beta_w_transform(H, beta)
    Gt = invert_variable(G)
    return {
        "radial": evaluate_halfline(g, desc["radial"], tol),
        "peeled": evaluate_halfline(h, desc["peeled"], tol),
        "inverted": evaluate_halfline(H, desc["inverted"], tol),
        "beta-map": evaluate_halfline(G, desc["beta-map"], tol),
        "reflected": evaluate_halfline(Gt, desc["reflected"], tol),
    }


def chain_spread(reports):
    vals = [r.normalized for r in reports.values()]
    ref = vals[0]
    return max(abs(v - ref) / abs(ref) for v in vals)


# ------------------------------------------------------------------ Grushin lifts

def lift_grushin(f, power):
    """F(x, y) = y^power f(x, sqrt(y)) as a half-plane profile."""
    a = float(power)

    def value(x, y):
        return y ** a * f.value(x, np.sqrt(y))

    def fx(x, y):
        return y ** a * f.fx(x, np.sqrt(y))

    def fy(x, y):
        r = np.sqrt(y)
        return a * y ** (a - 1.0) * f.value(x, r) + 0.5 * y ** (a - 0.5) * f.ft(x, r)

    def fy_shift(x, y, alpha):
        r = np.sqrt(y)
        out = 0.5 * y ** (a - 0.5) * f.ft(x, r)
        if alpha != a:
            out = out + (a - alpha) * y ** (a - 1.0) * f.value(x, r)
        return out

    return HalfPlaneProfile(value, fx, fy, hint_x=f.hint_x, hint_y=DecayHint(breaks=(1.0,)),
                            label=f"y^{a:g} {f.label}(x, sqrt y)", fy_shift=fy_shift)


def grushin2d_to_hyperbolic(f, tol=TOL_2D):
    """F = y^(1/4) f(x, sqrt y); checks the L6 identity and form = 4 x weighted form."""
    F = lift_grushin(f, 0.25)
    l6_f, form_f = grushin_integrals_2d(f, tol)
    l6_F = lp_integral_plane(F, 6.0, tol)
    w = weighted_form(F, 0.25, tol)
    q_grushin = l6_f ** (1.0 / 3.0) / form_f if form_f > 0 else math.nan
    q_hyp = l6_F ** (1.0 / 3.0) / w if w > 0 else math.nan
    report = ReductionReport(
        name=f"Grushin R^2 -> M: {f.label}",
        norm_identity_residual=_rel(l6_f, l6_F),
        form_identity_residual=_rel(form_f, 4.0 * w),
        tolerance=1e-6,
        details={"l6_grushin": l6_f, "l6_hyperbolic": l6_F, "grushin_form": form_f,
                 "weighted_form": w, "quotient_grushin": q_grushin,
                 "quotient_hyperbolic": q_hyp,
                 "chain_residual": _rel(q_hyp, 4.0 * q_grushin) if form_f > 0 else 0.0},
    )
    return F, report


def grushin3d_to_hyperbolic(f, tol=TOL_2D):
    """F = y^(1/2) f(x, sqrt y); ||f||_4^4 = pi ||F||_4^4 and form = 4 pi x weighted form."""
    F = lift_grushin(f, 0.5)
    l4_f, form_f = grushin_integrals_3d(f, tol)
    l4_F = lp_integral_plane(F, 4.0, tol)
    w = weighted_form(F, 0.5, tol)
    q_grushin = math.sqrt(l4_f) / form_f if form_f > 0 else math.nan
    q_hyp = math.sqrt(l4_F) / w if w > 0 else math.nan
    report = ReductionReport(
        name=f"Grushin R^3 -> M: {f.label}",
        norm_identity_residual=_rel(l4_f, PI * l4_F),
        form_identity_residual=_rel(form_f, 4.0 * PI * w),
        tolerance=1e-6,
        details={"l4_grushin": l4_f, "l4_hyperbolic": l4_F, "grushin_form": form_f,
                 "weighted_form": w, "quotient_grushin": q_grushin,
                 "quotient_hyperbolic": q_hyp,
                 "chain_residual": _rel(q_hyp, 4.0 * math.sqrt(PI) * q_grushin)
                 if form_f > 0 else 0.0},
    )
    return F, report


# ------------------------------------------------------------------ R^3 cylindrical

# n = 3, p = 6: A_6^2 = [pi n (n-2)]^-1 (Gamma(n)/Gamma(n/2))^(2/n)
R3_SOBOLEV_CONSTANT_SQ = (3.0 * PI) ** -1 * (math.gamma(3.0) / math.gamma(1.5)) ** (2.0 / 3.0)
# B_p = 4/(n(n-2)) [(n-1)/(2 pi)]^(2/n)
B6 = 4.0 / 3.0 * (2.0 / (2.0 * PI)) ** (2.0 / 3.0)


def make_r3_radial(kind="aubin-talenti", scale=1.0):
    """Radial functions of r = |x| on R^3 (as RadialProfile in the variable r)."""
    c = float(scale)
    if kind == "aubin-talenti":
        return RadialProfile(lambda r: (1.0 + c * r * r) ** -0.5,
                             lambda r: -c * r * (1.0 + c * r * r) ** -1.5,
                             DecayHint(decay=1.0), deriv_decay=2.0,
                             label="(1+|x|^2)^-1/2" if c == 1.0 else f"(1+{c:g}|x|^2)^-1/2")
    if kind == "gaussian":
        return RadialProfile(lambda r: np.exp(-c * r * r),
                             lambda r: -2.0 * c * r * np.exp(-c * r * r),
                             DecayHint(), deriv_decay=math.inf, label=f"exp(-{c:g}|x|^2)")
    if kind == "power":
        return RadialProfile(lambda r: (1.0 + r * r) ** -c,
                             lambda r: -2.0 * c * r * (1.0 + r * r) ** (-c - 1.0),
                             DecayHint(decay=2.0 * c), deriv_decay=2.0 * c + 1.0,
                             label=f"(1+|x|^2)^-{c:g}")
    raise ValueError(f"unknown R^3 profile {kind!r}")


def r3_sobolev_quotient(f, tol=TOL_1D):
    """||f||_6^2 / int |grad f|^2 for radial f on R^3 (1D radial quadrature)."""
    l6 = integrate_halfline(lambda r: 4.0 * PI * r * r * f(r) ** 6,
                            DecayHint(decay=6.0 * f.decay - 2.0), tol).value
    grad = integrate_halfline(lambda r: 4.0 * PI * r * r * f.d(r) ** 2,
                              DecayHint(decay=2.0 * f.ddecay - 2.0), tol).value
    return l6 ** (1.0 / 3.0) / grad, l6, grad


def cylindrical_lift(f):
    """g(t, y) = y^(1/2) f(sqrt(t^2 + y^2)) on the half-plane (t plays the role of x)."""

    def radius(t, y):
        return np.hypot(t, y)

    def value(t, y):
        return np.sqrt(y) * f(radius(t, y))

    def fx(t, y):
        r = radius(t, y)
        return np.sqrt(y) * f.d(r) * t / r

    def fy(t, y):
        r = radius(t, y)
        return 0.5 / np.sqrt(y) * f(r) + np.sqrt(y) * f.d(r) * y / r

    def fy_shift(t, y, alpha):
        r = radius(t, y)
        out = y ** 1.5 * f.d(r) / r
        if alpha != 0.5:
            out = out + (0.5 - alpha) / np.sqrt(y) * f(r)
        return out

    return HalfPlaneProfile(value, fx, fy, hint_x=DecayHint(symmetric=True),
                            hint_y=DecayHint(breaks=(1.0,)), label=f"cyl({f.label})",
                            fy_shift=fy_shift)


def rn_cylindrical_reduction(f, tol=TOL_2D):
    """Compare the R^3 Sobolev quotient of f with the hyperbolic quotient of g."""
    g = cylindrical_lift(f)
    q_r3, l6_r3, grad_r3 = r3_sobolev_quotient(f)
    l6_g = lp_integral_plane(g, 6.0, tol)
    w = weighted_form(g, 0.5, tol)
    q_hyp = l6_g ** (1.0 / 3.0) / w
    report = ReductionReport(
        name=f"R^3 -> M: {f.label}",
        norm_identity_residual=_rel(l6_r3, 2.0 * PI * l6_g),
        form_identity_residual=_rel(grad_r3, 2.0 * PI * w),
        tolerance=1e-6,
        details={"quotient_r3": q_r3, "quotient_hyperbolic": q_hyp,
                 "r3_constant": R3_SOBOLEV_CONSTANT_SQ, "hyperbolic_constant": B6,
                 "chain_residual": _rel(q_hyp, (2.0 * PI) ** (2.0 / 3.0) * q_r3)},
    )
    return g, report


# ------------------------------------------------------------------ Plancherel

def _plancherel_rhs(f, half_width, n, convolve):
    h = 2.0 * half_width / n
    x = -half_width + h * np.arange(n)
    fx = np.asarray(f(x), dtype=complex)
    dxi = 1.0 / (n * h)
    # f~(xi_k) = h sum_j f(x_j) exp(2 pi i xi_k x_j) with xi_k = (k - n/2) dxi
    k = np.arange(n) - n // 2
    spec = h * np.fft.ifft(fx) * n
    spec = np.fft.fftshift(spec) * np.exp(2j * PI * k * dxi * (-half_width))
    pair = convolve(spec, spec) * dxi
    triple = convolve(pair, spec) * dxi
    return float(np.sum(np.abs(triple) ** 2) * dxi)


def plancherel_power_check(f, tol=1e-6, half_width=None, n=None, max_n=8192,
                           convolve=None, decay=math.inf):
    """int f^6 dx against int |f~ * f~ * f~|^2 dxi on a uniform grid.

    The transform is a DFT of the samples and both convolutions are direct
    linear convolutions.  The grid is refined until the right side settles;
    GridTooCoarse is raised if it does not reach ``tol`` within ``max_n``.
    """
    convolve = convolve or kernels.linear_convolve
    lhs = integrate_interval(lambda x: np.asarray(f(x), dtype=float) ** 6, -math.inf, math.inf,
                             1e-13, DecayHint(decay=6.0 * decay)).value
    if lhs == 0.0:
        return CheckReport("Plancherel sixth power", 0.0, 0.0, 0.0, tol, True)
    if half_width is None:
        half_width = 8.0
        while half_width < 64.0 and abs(f(np.array([half_width]))[0]) > 1e-12:
            half_width *= 2.0
    n = n or 256
    prev = None
    while True:
        rhs = _plancherel_rhs(f, half_width, n, convolve)
        res = abs(rhs - lhs) / abs(lhs)
        if res <= tol and prev is not None and abs(rhs - prev) <= tol * abs(lhs):
            break
        if 2 * n > max_n:
            if res <= tol:
                break
            raise GridTooCoarse(f"Plancherel residual {res:.3g} above {tol:g} at n={n}", res)
        prev = rhs
        n *= 2
    return CheckReport("Plancherel sixth power", rhs, lhs, res, tol, res <= tol,
                       details={"n": n, "half_width": half_width})
