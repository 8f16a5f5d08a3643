"""Norms, Dirichlet forms and inequality quotients.

Four settings: the Grushin plane R^2, the Grushin space R^3 (t-radial), the
hyperbolic plane M (radial profiles, or general profiles through 2D
quadrature), and radial functions on S^2 written on the half-line.

Each inequality is a small descriptor; one evaluator per setting handles
all of them.  Integrals are always computed by quadrature, even when a
closed form is known.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidHint, NonConvergence
from .quadrature import DecayHint, integrate_halfline, integrate_plane, partial_sums
from .reports import CheckReport, QuotientReport

PI = math.pi
FOUR_PI = 4.0 * math.pi
TOL_1D = 1e-10
TOL_2D = 1e-7


# ------------------------------------------------------------------ parameters

@dataclass(frozen=True)
class SpectralParams:
    """s > 0 with p = 2 + 1/s, q = 2 - 1/(1 + s) and the sharp constant A_p."""

    s: float

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(f"s must be > 0, got {self.s}")

    @property
    def p(self):
        return 2.0 + 1.0 / self.s

    @property
    def q(self):
        return 2.0 - 1.0 / (1.0 + self.s)

    @property
    def A_p(self):
        return sharp_constant(self.s)

    @property
    def beta(self):
        return 2.0 * self.s

    @property
    def C_p(self):
        """Constant of the half-line radial form: (4 pi)^((p-2)/p) A_p."""
        return FOUR_PI ** ((self.p - 2.0) / self.p) * self.A_p

    @property
    def B_p(self):
        """Constant after the beta-map: beta^((1+2beta)/(1+beta)) C_p / 4."""
        b = self.beta
        return 0.25 * b ** ((1.0 + 2.0 * b) / (1.0 + b)) * self.C_p


def sharp_constant(s):
    """A_p = (2 pi)^(2/p - 1) s^(-1 - 2/p) with p = 2 + 1/s."""
    two_over_p = 2.0 * s / (2.0 * s + 1.0)
    return (2.0 * PI) ** (two_over_p - 1.0) * s ** (-1.0 - two_over_p)


GRUSHIN_2D_CONSTANT = PI ** (-2.0 / 3.0)
GRUSHIN_3D_CONSTANT = 1.0 / (2.0 * PI)


@dataclass(frozen=True)
class Inequality:
    """[||F||_p]^2 <= constant * [ int |DF|^2 dnu + l2_coefficient int |F|^2 dnu ]."""

    label: str
    p: float
    l2_coefficient: float
    constant: float

    @classmethod
    def for_params(cls, params, label=None):
        return cls(label or f"A_p form, s={params.s:g}", params.p,
                   params.s * (params.s - 1.0), params.A_p)


HYPERBOLIC_L6 = Inequality("hyperbolic L6, -3/16 form", 6.0, -3.0 / 16.0, 4.0 * PI ** (-2.0 / 3.0))
HYPERBOLIC_L6_QUARTER = Inequality("hyperbolic L6, -1/4 form", 6.0, -0.25, (4.0 / 3.0) * PI ** (-2.0 / 3.0))
HYPERBOLIC_L4 = Inequality("hyperbolic L4, -1/4 form", 4.0, -0.25, 2.0 / math.sqrt(PI))


def small_s_inequality(s):
    return Inequality.for_params(SpectralParams(s), f"small-s family, s={s:g}")


def large_s_inequality(s):
    return Inequality.for_params(SpectralParams(s), f"s>=1 family, s={s:g}")


# ------------------------------------------------------------------ radial integrals

def _profile_hint(F, decay):
    h = F.hint
    return DecayHint(decay=decay, support=h.support, breaks=h.breaks, scale=h.scale)


def radial_integral(integrand, F, decay, tol=TOL_1D, what="integral"):
    """int_0^inf integrand(u) du, with the decay exponent of the integrand.

    When ``decay <= 1`` and the profile is not compactly supported the
    integral diverges; partial sums over growing ranges are computed to
    confirm it and NonConvergence is raised with them attached.
    """
    hint = _profile_hint(F, decay)
    if hint.support is None and not decay > 1.0:
        caps = [1e2, 1e4, 1e6, 1e8]
        sums = partial_sums(integrand, caps, hint, tol)
        if abs(sums[-1] - sums[-2]) > 1e-6 * max(1.0, abs(sums[-1])):
            raise NonConvergence(
                f"{what} of {F.label or 'profile'} diverges: integrand decays like "
                f"u^-{decay:g}; partial sums {['%.6g' % v for v in sums]}",
                partial=sums)
        raise InvalidHint(f"{what}: declared decay {decay} but partial sums settle")
    return integrate_halfline(integrand, hint, tol).value


def lp_integral_radial(F, p, tol=TOL_1D):
    """int_0^inf |F|^p du."""
    return radial_integral(lambda u: np.abs(F(u)) ** p, F, p * F.decay, tol, f"L{p:g} integral")


def lp_norm_radial(F, p, tol=TOL_1D):
    """(4 pi int |F|^p du)^(1/p), the L^p(M) norm of a radial function."""
    return (FOUR_PI * lp_integral_radial(F, p, tol)) ** (1.0 / p)


def l2_squared_radial(F, tol=TOL_1D):
    return FOUR_PI * lp_integral_radial(F, 2.0, tol)


def dirichlet_integral_radial(F, tol=TOL_1D):
    """int_0^inf (u + u^2) F'(u)^2 du."""
    return radial_integral(lambda u: (u + u * u) * F.d(u) ** 2, F, 2.0 * F.ddecay - 2.0,
                           tol, "Dirichlet integral")


def hyperbolic_dirichlet_radial(F, tol=TOL_1D):
    """int_M |DF|^2 dnu = 4 pi int (u + u^2) F'^2 du."""
    return FOUR_PI * dirichlet_integral_radial(F, tol)


def evaluate_inequality(F, ineq, tol=TOL_1D):
    """Evaluate a hyperbolic inequality descriptor on a radial profile."""
    lhs = lp_norm_radial(F, ineq.p, tol) ** 2
    dirichlet = hyperbolic_dirichlet_radial(F, tol)
    l2 = l2_squared_radial(F, tol) if ineq.l2_coefficient != 0.0 else 0.0
    return QuotientReport.build(lhs, dirichlet, l2, ineq.l2_coefficient, ineq.constant,
                                label=f"{ineq.label}: {F.label}")


def hyperbolic_quotient(F, params, tol=TOL_1D):
    """Quotient of [||F||_p]^2 against the A_p-form with coefficient s(s-1)."""
    if not isinstance(params, SpectralParams):
        params = SpectralParams(params)
    return evaluate_inequality(F, Inequality.for_params(params), tol)


def spectral_gap_check(F, tol=TOL_1D, margin=1e-10):
    """(1/4) int |F|^2 dnu <= int |DF|^2 dnu."""
    dirichlet = hyperbolic_dirichlet_radial(F, tol)
    l2 = l2_squared_radial(F, tol)
    target = 0.25 * l2
    return CheckReport(
        name=f"spectral gap: {F.label}",
        value=dirichlet,
        target=target,
        residual=dirichlet - target,
        tolerance=margin,
        passed=dirichlet >= target - margin,
        details={"ratio": dirichlet / target if target > 0 else math.inf},
    )


# ------------------------------------------------------------------ half-line forms

@dataclass(frozen=True)
class Weight:
    """A half-line weight w(u) with w ~ u^power at infinity."""

    fn: object
    power: float
    name: str = ""

    def __call__(self, u):
        return self.fn(u)


@dataclass(frozen=True)
class HalflineInequality:
    """[int |G|^p W_lhs]^e <= constant * [c_g int W_g G'^2 + c_l int W_l G^2]."""

    label: str
    p: float
    lhs_weight: Weight
    lhs_exponent: float
    grad_weight: Weight
    grad_coefficient: float
    l2_weight: Weight
    l2_coefficient: float
    constant: float


ONE = Weight(lambda u: np.ones_like(u), 0.0, "1")


def _w(fn, power, name):
    return Weight(fn, power, name)


W_U_PLUS_U2 = _w(lambda u: u + u * u, 2.0, "u+u^2")
W_SPHERE = _w(lambda w: (1.0 + w) ** -2, -2.0, "(1+w)^-2")
W_LINEAR = _w(lambda w: w, 1.0, "w")


def radial_form(ineq):
    """The half-line version of a hyperbolic inequality (dnu = 4 pi du)."""
    return HalflineInequality(
        f"{ineq.label} (radial)", ineq.p, ONE, 2.0 / ineq.p, W_U_PLUS_U2, 1.0,
        ONE, ineq.l2_coefficient, FOUR_PI ** (1.0 - 2.0 / ineq.p) * ineq.constant)


L6_PEELED = HalflineInequality(
    "L6 form after peeling (1+u)^-1/4", 6.0,
    _w(lambda u: (1.0 + u) ** -1.5, -1.5, "(1+u)^-3/2"), 1.0 / 3.0,
    _w(lambda u: u * np.sqrt(1.0 + u), 1.5, "u sqrt(1+u)"), 1.0,
    _w(lambda u: (1.0 + u) ** -1.5, -1.5, "(1+u)^-3/2"), 1.0 / 16.0,
    2.0 ** (10.0 / 3.0))

_W5 = _w(lambda u: (1.0 + u) ** -1.5 / np.sqrt(u), -2.0, "(1+u)^-3/2 u^-1/2")
L6_INVERTED = HalflineInequality(
    "L6 form in the inverted variable", 6.0, _W5, 1.0 / 3.0,
    _w(lambda u: np.sqrt(u * (1.0 + u)), 1.0, "sqrt(u(1+u))"), 1.0,
    _W5, 1.0 / 16.0, 2.0 ** (10.0 / 3.0))

L6_W = HalflineInequality(
    "L6 form in the w variable", 6.0, W_SPHERE, 1.0 / 3.0,
    _w(lambda w: 2.0 * w + 1.0, 1.0, "2w+1"), 4.0, W_SPHERE, 1.0, 1.0)


def sphere_radial_form(p, lhs_exponent=None):
    """Radial S^2 Sobolev inequality on the half-line, constant 1.

    [int |G|^p (1+w)^-2 dw]^(2/p) <= (p-2)/2 int w G'^2 dw + int G^2 (1+w)^-2 dw
    """
    if not p >= 2.0:
        raise ValueError("p must be >= 2")
    e = 2.0 / p if lhs_exponent is None else lhs_exponent
    return HalflineInequality(
        f"radial S^2 form, p={p:g}", p, W_SPHERE, e, W_LINEAR, 0.5 * (p - 2.0),
        W_SPHERE, 1.0, 1.0)


SPHERE_L6 = sphere_radial_form(6.0)
HYPERBOLIC_L4_RADIAL = radial_form(HYPERBOLIC_L4)
L4_PEELED = HalflineInequality(
    "L4 form after peeling (1+u)^-1/2", 4.0, W_SPHERE, 0.5,
    W_LINEAR, 4.0, W_SPHERE, 1.0, 1.0)
SPHERE_L4 = sphere_radial_form(4.0)


def _small_s_chain(s):
    """Descriptors along the small-s reduction chain (beta = 2 s)."""
    prm = SpectralParams(s)
    b, p, cp, bp = prm.beta, prm.p, prm.C_p, prm.B_p
    e = 2.0 / p
    peel_w = _w(lambda u: (1.0 + u) ** (-b - 1.0), -b - 1.0, "(1+u)^(-b-1)")
    inv_w = _w(lambda u: (1.0 + u) ** (-b - 1.0) * u ** (b - 1.0), -2.0, "(1+u)^(-b-1)u^(b-1)")
    r = 1.0 / b

    def g_beta(w):
        # w^(2-r) [(1+w)^r - w^r] = w^2 expm1(r log1p(1/w)) without cancellation
        w = np.asarray(w, dtype=float)
        pos = w > 0
        wp = np.where(pos, w, 1.0)
        rl = r * np.log1p(1.0 / wp)
        big = rl > 30.0
        # for large r log1p(1/w) the -1 of expm1 is below rounding; stay in logs
        out = np.where(big, np.exp(2.0 * np.log(wp) + np.where(big, rl, 0.0)),
                       wp * wp * np.expm1(np.where(big, 0.0, rl)))
        return np.where(pos, out, 0.0)

    return {
        "radial": radial_form(Inequality("small-s", p, s * (s - 1.0), prm.A_p)),
        "peeled": HalflineInequality(
            "peeled", p, peel_w, e, _w(lambda u: u * (1.0 + u) ** (1.0 - b), 2.0 - b, "u(1+u)^(1-b)"),
            1.0, peel_w, 0.25 * b * b, cp),
        "inverted": HalflineInequality(
            "inverted", p, inv_w, e,
            _w(lambda u: u ** b * (1.0 + u) ** (1.0 - b), 1.0, "u^b(1+u)^(1-b)"), 1.0,
            inv_w, 0.25 * b * b, cp),
        "beta-map": HalflineInequality(
            "beta-map", p, W_SPHERE, b / (1.0 + b), _w(g_beta, 1.0, "w^(2-1/b)[(1+w)^(1/b)-w^(1/b)]"),
            4.0, W_SPHERE, 1.0, bp),
        "reflected": HalflineInequality(
            "reflected", p, W_SPHERE, b / (1.0 + b),
            _w(lambda w: np.expm1(r * np.log1p(w)), r, "(1+w)^(1/b)-1"), 4.0, W_SPHERE, 1.0, bp),
        "sphere": sphere_radial_form(p, b / (1.0 + b)),
    }


def small_s_chain(s):
    return _small_s_chain(s)


def reflected_form(beta):
    return _small_s_chain(0.5 * beta)["reflected"]


def sphere_beta_form(beta):
    return sphere_radial_form(2.0 * (1.0 + 1.0 / beta), beta / (1.0 + beta))


def _weighted_integral(integrand, G, decay, tol, what):
    return radial_integral(integrand, G, decay, tol, what)


def evaluate_halfline(G, ineq, tol=TOL_1D):
    """Evaluate a half-line inequality descriptor on a profile G."""
    p = ineq.p
    lw, gw, l2w = ineq.lhs_weight, ineq.grad_weight, ineq.l2_weight
    lhs_int = _weighted_integral(lambda u: np.abs(G(u)) ** p * lw(u), G,
                                 p * G.decay - lw.power, tol, "lhs integral")
    grad_int = _weighted_integral(lambda u: gw(u) * G.d(u) ** 2, G,
                                  2.0 * G.ddecay - gw.power, tol, "gradient integral")
    l2_int = 0.0
    if ineq.l2_coefficient != 0.0:
        l2_int = _weighted_integral(lambda u: l2w(u) * G(u) ** 2, G,
                                    2.0 * G.decay - l2w.power, tol, "L2 integral")
    return QuotientReport.build(lhs_int ** ineq.lhs_exponent, ineq.grad_coefficient * grad_int,
                                l2_int, ineq.l2_coefficient, ineq.constant,
                                label=f"{ineq.label}: {G.label}")


def sphere_radial_quotient(G, p, tol=TOL_1D):
    return evaluate_halfline(G, sphere_radial_form(p), tol)


# ------------------------------------------------------------------ Grushin forms

def _parabolic(g, f):
    # x = (1 + t^2) xi follows the x ~ t^2 scaling of the Grushin operator,
    # which keeps slowly decaying profiles from forming a ridge in (x, t)
    if not f.parabolic:
        return g

    def h(xi, t):
        j = 1.0 + t * t
        return j * g(j * xi, t)
    return h


def grushin_integrals_2d(f, tol=TOL_2D):
    """(int f^6, int f_t^2 + 4 t^2 f_x^2) over R^2."""
    lp = _parabolic(lambda x, t: f.value(x, t) ** 6, f)
    grad = _parabolic(lambda x, t: f.ft(x, t) ** 2 + 4.0 * t * t * f.fx(x, t) ** 2, f)
    l6 = integrate_plane(lp, f.hint_x, f.hint_t, tol).value
    form = integrate_plane(grad, f.hint_x, f.hint_t, tol).value
    return l6, form


def grushin_quotient_2d(f, tol=TOL_2D):
    if f.dimension != 2:
        raise ValueError("grushin_quotient_2d needs a 2-dimensional profile")
    l6, form = grushin_integrals_2d(f, tol)
    return QuotientReport.build(l6 ** (1.0 / 3.0), form, 0.0, 0.0, GRUSHIN_2D_CONSTANT,
                                label=f"Grushin R^2: {f.label}")


def grushin_integrals_3d(f, tol=TOL_2D):
    """(int f^4, int |grad_t f|^2 + 4|t|^2 f_x^2) over R x R^2, f radial in t."""
    lp = _parabolic(lambda x, r: f.value(x, r) ** 4, f)
    grad = _parabolic(lambda x, r: f.ft(x, r) ** 2 + 4.0 * r * r * f.fx(x, r) ** 2, f)
    l4 = integrate_plane(lp, f.hint_x, f.hint_t, tol, t_radial=True).value
    form = integrate_plane(grad, f.hint_x, f.hint_t, tol, t_radial=True).value
    return l4, form


def grushin_quotient_3d(f, tol=TOL_2D):
    if f.dimension != 3:
        raise ValueError("grushin_quotient_3d needs a 3-dimensional profile")
    l4, form = grushin_integrals_3d(f, tol)
    return QuotientReport.build(math.sqrt(l4), form, 0.0, 0.0, GRUSHIN_3D_CONSTANT,
                                label=f"Grushin R^3: {f.label}")


# ------------------------------------------------------------------ half-plane forms

def weighted_form(F, alpha, tol=TOL_2D):
    """int y^(2 alpha) |grad(y^-alpha F)|^2 dx dy = int F_x^2 + (F_y - alpha F / y)^2.

    Finite for profiles that are not in L^2(M); this is how the hyperbolic
    forms with a negative L2 coefficient are evaluated as limiting forms.
    """
    return integrate_plane(
        lambda x, y: F.fx(x, y) ** 2 + F.fy_minus(x, y, alpha) ** 2,
        F.hint_x, F.hint_y, tol, half_plane=True).value


def dirichlet_plane(F, tol=TOL_2D):
    """int_M |DF|^2 dnu = int (F_x^2 + F_y^2) dx dy."""
    return integrate_plane(lambda x, y: F.fx(x, y) ** 2 + F.fy(x, y) ** 2,
                           F.hint_x, F.hint_y, tol, half_plane=True).value


def lp_integral_plane(F, p, tol=TOL_2D):
    """int_M |F|^p dnu = int |F|^p y^-2 dx dy."""
    # y^(-2/p) inside the power keeps y^-2 from overflowing near y = 0
    e = -2.0 / p
    return integrate_plane(lambda x, y: (np.abs(F.value(x, y)) * y ** e) ** p,
                           F.hint_x, F.hint_y, tol, half_plane=True).value


def weighted_form_sides(F, alpha, tol=1e-12):
    lhs = weighted_form(F, alpha, tol)
    rhs = dirichlet_plane(F, tol) + alpha * (alpha - 1.0) * lp_integral_plane(F, 2.0, tol)
    return lhs, rhs


def weighted_form_residual(F, alpha, tol=1e-12):
    """|weighted form - (Dirichlet + alpha(alpha-1) L2)| for compactly supported F."""
    lhs, rhs = weighted_form_sides(F, alpha, tol)
    return abs(lhs - rhs)
