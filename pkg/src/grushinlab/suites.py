"""Verification suites: named checks grouped by result.

Each check returns ``(value, target, residual)``; it passes when the
residual is at most its (scaled) tolerance.  Checks are registered at import
time and looked up by id, so a worker process can run any of them.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import GrushinLabError

SUITES = ("theorem1", "theorem2", "theorem3", "theorem4", "theorem5", "theorem7",
          "identities", "rearrangement")

PI = math.pi


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    anchor: str
    tolerance: float
    fn: object


@dataclass(frozen=True)
class Row:
    check_id: str
    anchor: str
    value: float
    target: float
    residual: float
    tolerance: float
    passed: bool
    error: str = ""


REGISTRY = {}


def check(suite, check_id, anchor, tolerance):
    def deco(fn):
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = Check(check_id, suite, anchor, tolerance, fn)
        return fn
    return deco


def checks_for(suite):
    if suite == "all":
        return sorted(REGISTRY)
    if suite not in SUITES:
        raise KeyError(suite)
    return sorted(cid for cid, c in REGISTRY.items() if c.suite == suite)


def run_check(check_id, tol_scale=1.0, seed=0):
    c = REGISTRY[check_id]
    tol = c.tolerance * tol_scale
    try:
        value, target, residual = c.fn(seed)
    except GrushinLabError as exc:
        return Row(c.check_id, c.anchor, math.nan, math.nan, math.nan, tol, False,
                   f"{type(exc).__name__}: {exc}")
    return Row(c.check_id, c.anchor, float(value), float(target), float(residual), tol,
               bool(residual <= tol))


def _rel(a, b):
    return abs(a - b) / abs(b)


def _excess(quotients, constant):
    """Largest relative amount by which any quotient exceeds the constant."""
    worst = max(quotients)
    return worst, constant, max(0.0, (worst - constant) / constant)


# ------------------------------------------------------------------ theorem 1

@check("theorem1", "t1.grushin2d.extremal",
       "Grushin R^2: [(1+t^2)^2+x^2]^(-1/4) attains pi^(-2/3)", 1e-4)
def _t1_extremal(seed):
    from .functionals import GRUSHIN_2D_CONSTANT, grushin_quotient_2d
    from .profiles import make_grushin_extremal

    q = grushin_quotient_2d(make_grushin_extremal(2, 0.25)).quotient
    return q, GRUSHIN_2D_CONSTANT, _rel(q, GRUSHIN_2D_CONSTANT)


def _t1_profiles():
    from .profiles import make_grushin_extremal, make_grushin_gaussian, make_grushin_product

    return [make_grushin_extremal(2, 0.25), make_grushin_gaussian(2, 1.0, 2.0),
            make_grushin_product(2, 1.0, 1.5)]


@check("theorem1", "t1.chain", "Grushin R^2 quotient = 4 x half-plane quotient of y^(1/4) f(x, sqrt y)",
       1e-5)
def _t1_chain(seed):
    from .reductions import grushin2d_to_hyperbolic

    res = [grushin2d_to_hyperbolic(f)[1] for f in _t1_profiles()]
    worst = max(max(r.details["chain_residual"], r.norm_identity_residual,
                    r.form_identity_residual) for r in res)
    return worst, 0.0, worst


@check("theorem1", "t1.plancherel", "int f^6 = int |f~ * f~ * f~|^2 for f = exp(-x^2)", 1e-6)
def _t1_plancherel(seed):
    from .reductions import plancherel_power_check

    r = plancherel_power_check(lambda x: np.exp(-x * x), tol=1e-6)
    return r.value, r.target, r.residual


@check("theorem1", "t1.maximize", "largest Grushin R^2 quotient over gamma in [0.15, 0.6] at gamma = 1/4",
       1e-6)
def _t1_max(seed):
    from .functionals import GRUSHIN_2D_CONSTANT, grushin_quotient_2d
    from .profiles import make_grushin_extremal
    from .variational import maximize_quotient

    r = maximize_quotient(lambda f: grushin_quotient_2d(f).quotient,
                          lambda g: make_grushin_extremal(2, g), [(0.15, 0.6)],
                          GRUSHIN_2D_CONSTANT)
    return r.value, GRUSHIN_2D_CONSTANT, max(0.0, r.value / GRUSHIN_2D_CONSTANT - 1.0)


# ------------------------------------------------------------------ theorem 2

@check("theorem2", "t2.constant", "A_p at s = 1/4 equals 4 pi^(-2/3)", 1e-15)
def _t2_constant(seed):
    from .functionals import HYPERBOLIC_L6, sharp_constant

    a = sharp_constant(0.25)
    return a, HYPERBOLIC_L6.constant, _rel(a, HYPERBOLIC_L6.constant)


@check("theorem2", "t2.b6-constant", "B_6 = (4/3) pi^(-2/3) is the -1/4 form constant", 1e-15)
def _t2_b6(seed):
    from .functionals import HYPERBOLIC_L6_QUARTER
    from .reductions import B6

    return B6, HYPERBOLIC_L6_QUARTER.constant, _rel(B6, HYPERBOLIC_L6_QUARTER.constant)


@check("theorem2", "t2.eps-limit", "L6 form quotients on (1+u)^-eps tend to 2^(10/3)", 1e-2)
def _t2_scan(seed):
    from .variational import epsilon_scan_eq5

    r = epsilon_scan_eq5()
    bad = 0.0 if (r.monotone and r.below_target) else math.inf
    return r.limit, r.target, max(r.gap, bad)


@check("theorem2", "t2.chain", "L6 quotients agree across peel, inversion and the w-map", 1e-6)
def _t2_chain(seed):
    from .profiles import make_bump, make_exponential, make_power_law
    from .reductions import chain_spread, l6_chain

    worst = max(chain_spread(l6_chain(F))
                for F in (make_power_law(1.0), make_exponential(1.0), make_bump(1.0, 0.5)))
    return worst, 0.0, worst


@check("theorem2", "t2.w-measure", "(1+w)^-2 dw = u^-1/2 (1+u)^-3/2 du / 2 on [0, 1]", 1e-10)
def _t2_wmeasure(seed):
    from .reductions import w_measure_identity

    r = w_measure_identity()
    return r, 0.0, r


@check("theorem2", "t2.stereographic", "int w G'^2 dw = (1/2) int (dG/dtheta)^2 sin theta dtheta",
       1e-8)
def _t2_stereo(seed):
    from .profiles import make_power_law
    from .reductions import stereographic_identity

    r = stereographic_identity(make_power_law(0.5))
    return r, 0.0, r


@check("theorem2", "t2.r3-sobolev", "R^3 quotient of (1+|x|^2)^(-1/2) equals A_6^2", 1e-6)
def _t2_r3(seed):
    from .reductions import R3_SOBOLEV_CONSTANT_SQ, make_r3_radial, r3_sobolev_quotient

    q = r3_sobolev_quotient(make_r3_radial())[0]
    return q, R3_SOBOLEV_CONSTANT_SQ, _rel(q, R3_SOBOLEV_CONSTANT_SQ)


@check("theorem2", "t2.r3-lift", "half-plane quotient of y^(1/2) f(|(t, y)|) equals B_6", 1e-4)
def _t2_r3_lift(seed):
    from .reductions import B6, make_r3_radial, rn_cylindrical_reduction

    r = rn_cylindrical_reduction(make_r3_radial())[1]
    q = r.details["quotient_hyperbolic"]
    return q, B6, max(_rel(q, B6), r.norm_identity_residual, r.form_identity_residual)


# ------------------------------------------------------------------ theorem 3

@check("theorem3", "t3.grushin3d.extremal",
       "Grushin R^3: [(1+|t|^2)^2+x^2]^(-1/2) attains 1/(2 pi)", 1e-4)
def _t3_extremal(seed):
    from .functionals import GRUSHIN_3D_CONSTANT, grushin_quotient_3d
    from .profiles import make_grushin_extremal

    q = grushin_quotient_3d(make_grushin_extremal(3, 0.5)).quotient
    return q, GRUSHIN_3D_CONSTANT, _rel(q, GRUSHIN_3D_CONSTANT)


@check("theorem3", "t3.chain",
       "Grushin R^3 quotient = 4 sqrt(pi) x half-plane quotient of y^(1/2) f(x, sqrt y)", 1e-5)
def _t3_chain(seed):
    from .profiles import make_grushin_extremal, make_grushin_gaussian, make_grushin_product
    from .reductions import grushin3d_to_hyperbolic

    profiles = [make_grushin_extremal(3, 0.5), make_grushin_gaussian(3, 1.0, 2.0),
                make_grushin_product(3, 1.0, 2.0)]
    res = [grushin3d_to_hyperbolic(f)[1] for f in profiles]
    worst = max(max(r.details["chain_residual"], r.norm_identity_residual,
                    r.form_identity_residual) for r in res)
    return worst, 0.0, worst


# ------------------------------------------------------------------ theorem 4

@check("theorem4", "t4.constant", "A_p at s = 1/2 equals 2/sqrt(pi)", 1e-15)
def _t4_constant(seed):
    from .functionals import HYPERBOLIC_L4, sharp_constant

    a = sharp_constant(0.5)
    return a, HYPERBOLIC_L4.constant, _rel(a, HYPERBOLIC_L4.constant)


@check("theorem4", "t4.eps-limit", "L4 radial quotients on (1+u)^-eps tend to 4 as eps -> 1/2",
       1e-2)
def _t4_scan(seed):
    from .variational import epsilon_scan_thm4

    r = epsilon_scan_thm4()
    q12 = r.secondary["l4_quotients"]
    ok12 = all(q < r.secondary["l4_target"] for q in q12)
    bad = 0.0 if (r.monotone and r.below_target and ok12) else math.inf
    return r.limit, r.target, max(r.gap, bad)


@check("theorem4", "t4.sphere-l4", "radial S^2 L4 quotients stay below 1", 1e-6)
def _t4_sphere(seed):
    from .functionals import sphere_radial_quotient
    from .profiles import make_exponential, make_power_law

    qs = [sphere_radial_quotient(G, 4.0).quotient
          for G in (make_power_law(0.3), make_power_law(1.0), make_exponential(0.5))]
    return _excess(qs, 1.0)


# ------------------------------------------------------------------ theorem 5

@check("theorem5", "t5.chain", "small-s quotients agree across peel, inversion, beta-map, reflection",
       1e-6)
def _t5_chain(seed):
    from .profiles import make_bump, make_power_law
    from .reductions import chain_spread, small_s_chain_quotients

    worst = 0.0
    for s in (0.3, 0.7):
        for g in (make_power_law(2.0 * s + 0.5), make_bump(1.0, 0.5)):
            worst = max(worst, chain_spread(small_s_chain_quotients(g, s)))
    return worst, 0.0, worst


@check("theorem5", "t5.beta-measure", "(1+w)^-2 dw = beta (1+u)^(-beta-1) u^(beta-1) du on [1, 2]",
       1e-10)
def _t5_measure(seed):
    from .reductions import beta_measure_identity

    r = max(beta_measure_identity(b) for b in (0.6, 1.0, 2.0, 2.5))
    return r, 0.0, r


@check("theorem5", "t5.bernoulli", "4[(1+w)^(1/beta) - 1] >= (4/beta) w for 1/beta in {1, 2, 4}",
       1e-14)
def _t5_bernoulli(seed):
    from .reductions import bernoulli_check

    reports = [bernoulli_check(r) for r in (1.0, 2.0, 4.0)]
    worst = max(r.residual for r in reports)
    return min(r.value for r in reports), 0.0, worst


# ------------------------------------------------------------------ theorem 7

@check("theorem7", "t7.sobolev-extremal", "A_p-form quotient of (1+u)^-s equals A_p, s in {1, 3/2, 2}",
       1e-8)
def _t7_sobolev(seed):
    from .functionals import hyperbolic_quotient
    from .profiles import make_power_law

    worst = 0.0
    for s in (1.0, 1.5, 2.0):
        r = hyperbolic_quotient(make_power_law(s), s)
        worst = max(worst, abs(r.normalized - 1.0))
    return 1.0 + worst, 1.0, worst


@check("theorem7", "t7.hls-extremal", "HLS quotient of (1+u)^(-1-s) equals A_p, s in {1, 3/2, 2}", 1e-3)
def _t7_hls(seed):
    from .potential import hls_quotient
    from .profiles import make_power_law

    worst = 0.0
    for s in (1.0, 1.5, 2.0):
        r = hls_quotient(make_power_law(1.0 + s), s)
        worst = max(worst, abs(r.normalized - 1.0))
    return 1.0 + worst, 1.0, worst


@check("theorem7", "t7.dual", "A_p int F L_s F dnu matches the integrated-by-parts form at s = 2", 1e-6)
def _t7_dual(seed):
    from .potential import hls_dual_check

    r = hls_dual_check(2.0)
    return r.value, r.target, r.residual


@check("theorem7", "t7.euler-lagrange", "B(1+u)^-s solves L_s F = s^2 B^(-1/s) F^(1+1/s)", 1e-10)
def _t7_el(seed):
    from .potential import OperatorParams
    from .profiles import make_power_law
    from .variational import ode_residual

    grid = np.linspace(0.0, 10.0, 50)
    worst = 0.0
    for s, B in ((1.0, 1.0), (2.0, 16.0)):
        prm = OperatorParams.euler_lagrange(s, B)
        worst = max(worst, ode_residual(make_power_law(s, B), s, prm.c, grid=grid))
    return worst, 0.0, worst


@check("theorem7", "t7.inversion", "L_s(I_s G) = G for exp(-u) at s = 1 and (1+u)^-3 at s = 2", 1e-3)
def _t7_inversion(seed):
    from .potential import inversion_residual
    from .profiles import make_exponential, make_power_law

    grid = np.logspace(-1, 1, 9)
    r = max(inversion_residual(make_exponential(1.0), 1.0, grid),
            inversion_residual(make_power_law(3.0), 2.0, grid))
    return r, 0.0, r


@check("theorem7", "t7.psi-agreement", "psi_s integral and 2F1 forms agree on u in [1e-3, 1e3]", 1e-9)
def _t7_psi(seed):
    from .specialfn import psi

    worst = max(psi(u, s).agreement for s in (1.0, 1.25, 1.5, 2.0, 3.0)
                for u in np.logspace(-3, 3, 13))
    return worst, 0.0, worst


@check("theorem7", "t7.psi-closed-form", "psi_1(u) = (1/4 pi) log((1+u)/u)", 1e-12)
def _t7_psi1(seed):
    from .specialfn import psi_hypergeometric

    u = np.logspace(-3, 3, 25)
    ref = np.log1p(1.0 / u) / (4.0 * PI)
    worst = float(np.max(np.abs(psi_hypergeometric(u, 1.0) / ref - 1.0)))
    return worst, 0.0, worst


@check("theorem7", "t7.psi-asymptotics", "psi_s ~ Gamma(s)^2/(4 pi Gamma(2s)) u^-s and ~ -log(u)/(4 pi)",
       1e-3)
def _t7_asym(seed):
    from .specialfn import psi_hypergeometric, psi_large_u

    ratio = psi_hypergeometric(1e4, 1.5) / float(psi_large_u(1e4, 1.5))
    small = abs(psi_hypergeometric(1e-6, 2.0) + math.log(1e-6) / (4.0 * PI))
    # the small-u side is a bound of 1, not a ratio
    return ratio, 1.0, abs(ratio - 1.0) if small <= 1.0 else math.inf


@check("theorem7", "t7.radiality", "I_s G at two points with equal d(z, i) agree", 1e-6)
def _t7_radial(seed):
    from .potential import radiality_check
    from .profiles import make_power_law

    r = radiality_check(make_power_law(2.5), 1.5, 0.7)
    return r.value, r.target, r.residual


@check("theorem7", "t7.young", "||I_s G||_p <= ||G||_q ||y^(1/p) psi_s||_(p/2) at s = 1", 1e-6)
def _t7_young(seed):
    from .potential import young_bound_check
    from .profiles import make_power_law

    r = young_bound_check(make_power_law(2.0), 1.0)
    return r.value, r.target, r.residual


# ------------------------------------------------------------------ identities

@check("identities", "id.weighted-form",
       "int y^(2a)|grad(y^-a F)|^2 = int |DF|^2 + a(a-1) int F^2 dnu, a in {1/4, 1/2, 1}", 1e-8)
def _id_weighted(seed):
    from .functionals import weighted_form_residual
    from .profiles import make_plane_bump

    F = make_plane_bump(0.3, 1.2, 1.0, 0.8)
    worst = max(weighted_form_residual(F, a) for a in (0.25, 0.5, 1.0))
    return worst, 0.0, worst


@check("identities", "id.spectral-gap", "(1/4) int F^2 dnu <= int |DF|^2 dnu on 20 random bumps", 1e-10)
def _id_gap(seed):
    from .functionals import spectral_gap_check
    from .profiles import make_bump

    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(20):
        F = make_bump(rng.uniform(0.0, 5.0), rng.uniform(0.1, 3.0), rng.uniform(0.5, 2.0))
        r = spectral_gap_check(F)
        worst = max(worst, (r.target - r.value) / r.target)
    return worst, 0.0, max(0.0, worst)


@check("identities", "id.plancherel", "int f^6 dx = int |f~ * f~ * f~|^2 dxi, Gaussian", 1e-6)
def _id_plancherel(seed):
    return _t1_plancherel(seed)


@check("identities", "id.inversion-measure", "int phi(u) du = int phi(1/u) u^-2 du", 1e-8)
def _id_inversion(seed):
    from .reductions import inversion_integral_identity

    r = inversion_integral_identity(lambda u: (1.0 + u) ** -2.5 * np.sqrt(u), 2.0)
    return r, 0.0, r


# ------------------------------------------------------------------ rearrangement

def _random_samples(seed, count=100):
    from .rearrange import SampledFunction

    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(3, 60))
        vals = rng.random(n) * (rng.random(n) < 0.8)
        yield SampledFunction(-1.0, 2.0 / (n - 1), vals)


@check("rearrangement", "re.equimeasurable", "rearranged samples keep their value distribution", 0.0)
def _re_equi(seed):
    from .rearrange import decreasing_rearrangement, equimeasurable, symmetric_decreasing_x

    bad = sum(not (equimeasurable(f, decreasing_rearrangement(f))
                   and equimeasurable(f, symmetric_decreasing_x(f)))
              for f in _random_samples(seed))
    return bad, 0, bad


@check("rearrangement", "re.polya-szego", "discrete Dirichlet energy does not increase", 1e-12)
def _re_ps(seed):
    from .rearrange import decreasing_rearrangement, dirichlet_energy, symmetric_decreasing_x

    worst = 0.0
    for f in _random_samples(seed):
        worst = max(worst,
                    dirichlet_energy(symmetric_decreasing_x(f)) - dirichlet_energy(f),
                    dirichlet_energy(decreasing_rearrangement(f), zero_left=False)
                    - dirichlet_energy(f, zero_left=False))
    return worst, 0.0, max(0.0, worst)


@check("rearrangement", "re.idempotent", "rearranging twice equals rearranging once", 0.0)
def _re_idem(seed):
    from .rearrange import decreasing_rearrangement, symmetric_decreasing_x

    bad = 0
    for f in _random_samples(seed):
        for op in (decreasing_rearrangement, symmetric_decreasing_x):
            once = op(f)
            bad += not np.array_equal(op(once).values, once.values)
    return bad, 0, bad
