"""Double-exponential (tanh-sinh) quadrature on intervals, half-lines and the plane.

Every segment is mapped onto the unit interval and integrated with the
nested tanh-sinh rule; the step is halved until two successive levels agree.
Nodes are generated as the pair ``(x, 1 - x)`` so that points next to either
endpoint keep full relative precision, which is what makes algebraic and
logarithmic endpoint singularities harmless.

Infinite segments use ``u = a + L (1 - y) / y``.  In one dimension nodes
beyond ``U_CAP`` are not evaluated: the integrand there is replaced by the
power-law model ``f(U_CAP) (U_CAP / u) ** decay`` taken from the hint, and the
trapezoid sum is continued past the last representable node in log space so
that slowly decaying tails (decay close to 1) are not truncated.  In two
dimensions the tails beyond ``U_CAP_2D`` are dropped.
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache
import math

import numpy as np

from .errors import InvalidHint, NonConvergence

TMAX = 6.1
MIN_LEVEL = 3
MAX_LEVEL_1D = 14
MAX_LEVEL_2D = 8
BUDGET_1D = 1_000_000
BUDGET_2D = 10_000_000
U_CAP = 1e100
U_CAP_2D = 1e40
_EPS = np.finfo(float).eps
_CHUNK = 2_000_000

SINGULARITIES = ("none", "log", "algebraic")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DecayHint:
    """What the integrator may assume about an integrand.

    decay        integrand ~ u**(-decay) at infinity (``inf``: faster than any power)
    singularity  behaviour at the finite endpoint: none, log or algebraic
    exponent     for algebraic singularities, integrand ~ u**exponent near 0
    support      optional (lo, hi) outside of which the integrand vanishes
    breaks       interior points where the integrand is not smooth
    scale        where to split the half-line between the finite and tail parts
    symmetric    for a full-line axis: integrand is even, integrate over [0, inf)
    """

    decay: float = math.inf
    singularity: str = "none"
    exponent: float = 0.0
    support: tuple | None = None
    breaks: tuple = ()
    scale: float = 1.0
    symmetric: bool = False

    def __post_init__(self):
        if self.singularity not in SINGULARITIES:
            raise InvalidHint(f"unknown singularity kind {self.singularity!r}")
        if self.singularity == "algebraic" and not self.exponent > -1.0:
            raise InvalidHint(f"algebraic exponent {self.exponent} is not integrable")
        if self.support is not None:
            lo, hi = self.support
            if not lo < hi:
                raise InvalidHint(f"empty support {self.support}")
        if not self.scale > 0:
            raise InvalidHint("scale must be positive")

    def replace(self, **changes):
        return replace(self, **changes)


DEFAULT_HINT = DecayHint()


# ------------------------------------------------------------------ unit rule

@lru_cache(maxsize=None)
def _level_nodes(level, full=False):
    """tanh-sinh nodes on (0, 1) at a given level.

    Returns (x, 1 - x, dx/dt) for the nodes *added* at this level, or for
    all nodes of the level when ``full``.
    """
    h = 2.0 ** -level
    n = int(math.floor(TMAX / h))
    j = np.arange(-n, n + 1)
    if level > 0 and not full:
        j = j[j % 2 != 0]
    t = j * h
    a = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * np.abs(a))
    big = 1.0 / (1.0 + e)
    small = e / (1.0 + e)
    x = np.where(a >= 0, big, small)
    xc = np.where(a >= 0, small, big)
    dxdt = math.pi * np.cosh(t) * x * xc
    keep = (x > 0) & (xc > 0)
    out = x[keep], xc[keep], dxdt[keep]
    for arr in out:
        arr.setflags(write=False)
    return out


# ------------------------------------------------------------------ segments

@dataclass(frozen=True)
class _Segment:
    a: float
    b: float
    scale: float = 1.0

    def map(self, x, xc, dxdt):
        """Return (points, weights) for unit nodes with derivative dx/dt."""
        a, b = self.a, self.b
        if math.isfinite(a) and math.isfinite(b):
            length = b - a
            pts = np.where(x <= 0.5, a + length * x, b - length * xc)
            return pts, dxdt * length
        # u = a + L xc / x, du = L dx / x^2; dxdt / x^2 = pi cosh(t) xc / x
        # far nodes may overflow to inf; callers drop them via U_CAP
        with np.errstate(over="ignore"):
            r = xc / x
            w = (dxdt / (x * xc)) * (self.scale * r)
        with np.errstate(over="ignore"):
            if math.isfinite(a):
                return a + self.scale * r, w
            if math.isfinite(b):
                return b - self.scale * r, w
        raise ValueError("doubly infinite segment must be split first")


def _segments(lo, hi, breaks=(), scale=1.0):
    pts = sorted({float(b) for b in breaks if lo < b < hi})
    if not math.isfinite(lo) and not math.isfinite(hi) and not pts:
        pts = [0.0]
    if math.isfinite(lo) and not math.isfinite(hi):
        if not pts:
            pts = [lo + scale]
    if not math.isfinite(lo) and math.isfinite(hi):
        if not pts:
            pts = [hi - scale]
    edges = [lo] + pts + [hi]
    segs = []
    for a, b in zip(edges[:-1], edges[1:]):
        if math.isinf(a) or math.isinf(b):
            anchor = b if math.isinf(a) else a
            segs.append(_Segment(a, b, max(scale, abs(anchor))))
        else:
            segs.append(_Segment(a, b))
    return segs


def _call(f, pts):
    try:
        vals = f(pts)
    except (TypeError, ValueError):
        vals = np.vectorize(f, otypes=[float])(pts)
    vals = np.asarray(vals, dtype=float)
    if vals.shape != pts.shape:
        vals = np.broadcast_to(vals, pts.shape)
    return vals


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.count = 0

    def add(self, n):
        self.count += n
        if self.count > self.budget:
            raise NonConvergence(f"evaluation budget {self.budget} exhausted")


def _eval_with_tail(f, pts, decay, counter, tail_cache):
    far = np.abs(pts) > U_CAP
    vals = np.zeros_like(pts)
    near = ~far
    if near.any():
        counter.add(int(near.sum()))
        vals[near] = _call(f, pts[near])
    if far.any() and math.isfinite(decay):
        key = 1.0 if pts[far][0] > 0 else -1.0
        if key not in tail_cache:
            counter.add(1)
            tail_cache[key] = float(_call(f, np.array([key * U_CAP]))[0])
        vals[far] = tail_cache[key] * (U_CAP / np.abs(pts[far])) ** decay
    return vals


def _model_tail_sum(level, seg, decay, f_cap):
    """Trapezoid terms beyond TMAX for the power-law tail model.

    Summed in log space: u = L exp(pi sinh|t|) overflows long before the
    terms of a slowly decaying integrand become negligible.
    """
    if f_cap == 0.0:
        return 0.0
    h = 2.0 ** -level
    n = int(math.floor(TMAX / h))
    log_c = math.log(abs(f_cap)) + decay * math.log(U_CAP) + (1.0 - decay) * math.log(seg.scale)
    acc = 0.0
    j = n + 1
    step = 1
    if level > 0:
        if j % 2 == 0:
            j += 1
        step = 2
    while True:
        t = j * h
        log_r = math.pi * math.sinh(t)
        log_term = log_c + (1.0 - decay) * log_r + math.log(math.pi * math.cosh(t))
        term = math.exp(log_term) if log_term > -745.0 else 0.0
        acc += term
        if term <= 1e-20 * acc or term == 0.0:
            break
        j += step
    return math.copysign(acc, f_cap)


def _adaptive_segment(f, seg, tol, decay, counter, max_level=MAX_LEVEL_1D):
    total = 0.0
    abs_total = 0.0
    prev = None
    tail_cache = {}
    infinite = not (math.isfinite(seg.a) and math.isfinite(seg.b))
    for level in range(max_level + 1):
        x, xc, dxdt = _level_nodes(level)
        pts, wts = seg.map(x, xc, dxdt)
        vals = _eval_with_tail(f, pts, decay, counter, tail_cache)
        if not np.all(np.isfinite(vals)):
            bad = pts[~np.isfinite(vals)][:3]
            raise NonConvergence(f"integrand not finite at {bad}")
        contrib = wts * vals
        total += float(np.sum(contrib))
        abs_total += float(np.sum(np.abs(contrib)))
        if infinite and math.isfinite(decay):
            key = 1.0 if math.isfinite(seg.a) else -1.0
            if key not in tail_cache:
                counter.add(1)
                tail_cache[key] = float(_call(f, np.array([key * U_CAP]))[0])
            ext = _model_tail_sum(level, seg, decay, tail_cache[key])
            total += ext
            abs_total += abs(ext)
        h = 2.0 ** -level
        value = total * h
        if prev is not None and level >= MIN_LEVEL:
            est = max(abs(value - prev), 50.0 * _EPS * abs_total * h)
            if est <= tol * max(1.0, abs(value)):
                return value, est
        prev = value
    raise NonConvergence(
        f"no convergence on [{seg.a}, {seg.b}] after level {max_level}",
        partial={"value": value, "previous": prev})


def _integrate_segments(f, segs, tol, decay, budget):
    counter = _Counter(budget)
    value = 0.0
    err = 0.0
    for seg in segs:
        v, e = _adaptive_segment(f, seg, tol, decay, counter)
        value += v
        err += e
    return QuadratureResult(value, err, counter.count)


# ------------------------------------------------------------------ 1D API

def integrate_interval(f, a, b, tol=1e-10, hint=None):
    """Integrate f over [a, b]; either end may be infinite."""
    hint = hint or DEFAULT_HINT
    if not tol > 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 1)
    if a > b:
        r = integrate_interval(f, b, a, tol, hint)
        return QuadratureResult(-r.value, r.error_estimate, r.evaluations)
    if hint.support is not None:
        a = max(a, hint.support[0])
        b = min(b, hint.support[1])
        if a >= b:
            return QuadratureResult(0.0, 0.0, 1)
    if (math.isinf(a) or math.isinf(b)) and not hint.decay > 1.0:
        raise InvalidHint(f"decay exponent {hint.decay} is not integrable at infinity")
    segs = _segments(a, b, hint.breaks, hint.scale)
    return _integrate_segments(f, segs, tol, hint.decay, BUDGET_1D)


def integrate_halfline(f, hint=None, tol=1e-10):
    """Integrate f over [0, inf) (or over the hinted support)."""
    hint = hint or DEFAULT_HINT
    if hint.support is not None and math.isfinite(hint.support[1]):
        return integrate_interval(f, max(0.0, hint.support[0]), hint.support[1], tol, hint)
    return integrate_interval(f, 0.0, math.inf, tol, hint)


def integrate_unit(f, tol=1e-10, complement=False):
    """Integrate f over [0, 1].

    With ``complement=True`` f is called as ``f(t, 1 - t)`` where the second
    argument is computed without cancellation.  Use it for integrands that are
    singular at 1: in the one-argument form the nodes closest to 1 round to
    1.0 and are skipped, which limits the attainable accuracy there to about
    sqrt(eps) for an inverse square-root singularity.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    counter = _Counter(BUDGET_1D)
    total = 0.0
    abs_total = 0.0
    prev = None
    for level in range(MAX_LEVEL_1D + 1):
        x, xc, dxdt = _level_nodes(level)
        if not complement:
            # nodes that round to 1.0 cannot be evaluated faithfully
            inside = x < 1.0
            x, xc, dxdt = x[inside], xc[inside], dxdt[inside]
        counter.add(x.size)
        if complement:
            vals = np.asarray(f(x, xc), dtype=float)
        else:
            vals = _call(f, x)
        vals = np.broadcast_to(vals, x.shape)
        if not np.all(np.isfinite(vals)):
            raise NonConvergence("integrand not finite on (0, 1)")
        contrib = dxdt * vals
        total += float(np.sum(contrib))
        abs_total += float(np.sum(np.abs(contrib)))
        h = 2.0 ** -level
        value = total * h
        if prev is not None and level >= MIN_LEVEL:
            est = max(abs(value - prev), 50.0 * _EPS * abs_total * h)
            if est <= tol * max(1.0, abs(value)):
                return QuadratureResult(value, est, counter.count)
        prev = value
    raise NonConvergence("no convergence on [0, 1]", partial={"value": value})


def partial_sums(f, caps, hint=None, tol=1e-10):
    """Integrals of f over [0, U] for each U in caps (divergence probes)."""
    hint = hint or DEFAULT_HINT
    local = hint.replace(decay=math.inf, support=None)
    out = []
    lo = 0.0
    acc = 0.0
    for cap in caps:
        acc += integrate_interval(f, lo, cap, tol, local).value
        out.append(acc)
        lo = cap
    return out


# ------------------------------------------------------------------ 2D API

def _axis_rule(hint, level, default_lo):
    if hint.support is not None:
        lo, hi = hint.support
    else:
        lo, hi = default_lo, math.inf
    factor = 1.0
    if hint.symmetric and math.isinf(lo) and lo < 0:
        lo = 0.0
        factor = 2.0
    x, xc, dxdt = _level_nodes(level, full=True)
    h = 2.0 ** -level
    pts_all = []
    w_all = []
    for seg in _segments(lo, hi, hint.breaks, hint.scale):
        pts, wts = seg.map(x, xc, dxdt)
        # nodes that round onto a finite endpoint carry negligible weight
        keep = (np.abs(pts) <= U_CAP_2D) & (pts > lo) & (pts < hi)
        pts_all.append(pts[keep])
        w_all.append((h * factor) * wts[keep])
    return np.concatenate(pts_all), np.concatenate(w_all)


def plane_rule(hint_x, hint_y, level, y_from_zero=False):
    """Tensor axis rules (points and weights) used by integrate_plane."""
    px, wx = _axis_rule(hint_x, level, -math.inf)
    py, wy = _axis_rule(hint_y, level, 0.0 if y_from_zero else -math.inf)
    return px, wx, py, wy


def _tensor_sum(f, px, wx, py, wy, counter):
    rows = max(1, _CHUNK // max(1, py.size))
    total = 0.0
    abs_total = 0.0
    for i in range(0, px.size, rows):
        X = px[i:i + rows, None]
        counter.add(X.size * py.size)
        vals = np.asarray(f(X, py[None, :]), dtype=float)
        vals = np.broadcast_to(vals, (X.shape[0], py.size))
        if not np.all(np.isfinite(vals)):
            raise NonConvergence("planar integrand not finite")
        block = wx[i:i + rows, None] * vals * wy[None, :]
        total += float(block.sum())
        abs_total += float(np.abs(block).sum())
    return total, abs_total


def integrate_plane(f, hint_x=None, hint_y=None, tol=1e-7, half_plane=False,
                    t_radial=False, max_level=MAX_LEVEL_2D):
    """Integrate f(x, y) over R^2, or over y > 0 when ``half_plane``.

    With ``t_radial`` the second variable is the radius r of a t in R^2 and
    the integrand is weighted by 2 pi r over r > 0 (R^3 integrals of
    t-radial functions).  f must accept broadcast arrays.
    """
    hint_x = hint_x or DEFAULT_HINT
    hint_y = hint_y or DEFAULT_HINT
    g = f
    if t_radial:
        half_plane = True

        def g(x, r):
            return 2.0 * math.pi * r * f(x, r)

    counter = _Counter(BUDGET_2D)
    prev = None
    for level in range(1, max_level + 1):
        px, wx, py, wy = plane_rule(hint_x, hint_y, level, y_from_zero=half_plane)
        value, abs_total = _tensor_sum(g, px, wx, py, wy, counter)
        if prev is not None and level >= MIN_LEVEL:
            est = max(abs(value - prev), 50.0 * _EPS * abs_total)
            if est <= tol * max(1.0, abs(value)):
                return QuadratureResult(value, est, counter.count)
        prev = value
    raise NonConvergence("planar quadrature did not converge", partial={"value": value})


# ------------------------------------------------------------------ derivatives

def differentiate(f, x, h=None, return_error=False):
    """Derivative by Ridders' extrapolation of central differences."""
    if h is None:
        h = 0.2 * max(abs(x), 1e-2)
    con, con2, ntab = 1.4, 1.96, 20
    a = np.zeros((ntab, ntab))
    a[0, 0] = (f(x + h) - f(x - h)) / (2.0 * h)
    err = math.inf
    best = a[0, 0]
    for i in range(1, ntab):
        h /= con
        a[0, i] = (f(x + h) - f(x - h)) / (2.0 * h)
        fac = con2
        for j in range(1, i + 1):
            a[j, i] = (a[j - 1, i] * fac - a[j - 1, i - 1]) / (fac - 1.0)
            fac *= con2
            errt = max(abs(a[j, i] - a[j - 1, i]), abs(a[j, i] - a[j - 1, i - 1]))
            if errt <= err:
                err = errt
                best = a[j, i]
        # a diverging tableau ends the search, unless the early steps were
        # too coarse to give any estimate worth keeping
        settled = err <= 1e-6 * max(1.0, abs(best))
        if settled and abs(a[i, i] - a[i - 1, i - 1]) >= 2.0 * err:
            break
    best = float(best)
    return (best, float(err)) if return_error else best
