"""Sharpness checks: Euler-Lagrange residuals, epsilon-family limits and
bounded searches for the largest quotient."""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import BudgetExhausted, NonConvergence
from .functionals import (HYPERBOLIC_L4, HYPERBOLIC_L4_RADIAL, L6_INVERTED, TOL_1D, evaluate_halfline,
                          evaluate_inequality)
from .potential import apply_Ls_radial
from .profiles import make_power_law

L6_SCAN_TARGET = 2.0 ** (10.0 / 3.0)
L4_SCAN_FLOOR = 0.51


@dataclass(frozen=True)
class ScanResult:
    parameters: tuple
    quotients: tuple
    limit: float
    target: float
    method: str = "polynomial"
    secondary: dict = field(default_factory=dict)

    @property
    def gap(self):
        """Relative gap between the extrapolated limit and the target."""
        return abs(self.limit - self.target) / abs(self.target)

    @property
    def below_target(self):
        return all(q <= self.target + 1e-9 for q in self.quotients)

    @property
    def monotone(self):
        """Quotients increase as the parameter approaches its limit."""
        q = self.quotients
        return all(b > a for a, b in zip(q, q[1:]))


def ode_residual(F, s, c, p=None, grid=None):
    """max |L_s F - c F^(p-1)| on ``grid`` (p defaults to 2 + 1/s)."""
    if p is None:
        p = 2.0 + 1.0 / s
    if grid is None:
        grid = np.concatenate(([0.0], np.logspace(-4, 4, 161)))
    grid = np.asarray(grid, dtype=float)
    vals = F(grid)
    lhs = apply_Ls_radial(F, s, grid)
    return float(np.max(np.abs(lhs - c * np.abs(vals) ** (p - 2.0) * vals)))


# ------------------------------------------------------------------ extrapolation

def _neville(x, y, x0):
    x = np.asarray(x, dtype=float)
    p = np.array(y, dtype=float)
    n = x.size
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((x0 - x[i + k]) * p[i] + (x[i] - x0) * p[i + 1]) / (x[i] - x[i + k])
    return float(p[0])


def _richardson(x, y, x0):
    # last three points, x0 - x geometric: y = L - C |x - x0|^k
    (x1, x2, x3), (y1, y2, y3) = x[-3:], y[-3:]
    ratio = abs(x1 - x0) / abs(x2 - x0)
    d1, d2 = y2 - y1, y3 - y2
    if d1 == 0.0 or d2 == 0.0 or d1 / d2 <= 0.0:
        return float(y3)
    k = math.log(d1 / d2) / math.log(ratio)
    return float(y3 + d2 / (ratio ** k - 1.0))


def extrapolate(x, y, x0, method="polynomial"):
    """Limit of y(x) as x -> x0 from at least three samples.

    ``polynomial`` interpolates all samples and evaluates at x0 (Neville);
    ``richardson`` fits an algebraic rate to the last three samples.
    """
    if len(x) < 3:
        raise ValueError("extrapolation needs at least three points")
    if method == "polynomial":
        return _neville(x, y, x0)
    if method == "richardson":
        return _richardson(list(x), list(y), x0)
    raise ValueError(f"unknown extrapolation method {method!r}")


# ------------------------------------------------------------------ epsilon scans

def _check_grid(grid, lo, hi, name):
    grid = tuple(float(e) for e in grid)
    if len(grid) < 3:
        raise ValueError("a scan needs at least three parameter values")
    if any(not lo < e <= hi for e in grid):
        raise ValueError(f"{name} grid must lie in ({lo}, {hi}]")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly decreasing")
    return grid


def epsilon_scan_eq5(grid=(0.2, 0.1, 0.05, 0.025), method="polynomial", tol=TOL_1D):
    """Quotients of the inverted-variable L6 form on H = (1+u)^-eps as eps -> 0."""
    grid = _check_grid(grid, 0.0, 0.25, "eps")
    qs = tuple(evaluate_halfline(make_power_law(e), L6_INVERTED, tol).quotient for e in grid)
    return ScanResult(grid, qs, extrapolate(grid, qs, 0.0, method), L6_SCAN_TARGET, method)


def epsilon_scan_thm4(grid=(0.75, 0.625, 0.5625, 0.53125), method="polynomial", tol=TOL_1D):
    """Quotients of the L4 radial form on F = (1+u)^-eps as eps -> 1/2.

    Individual integrals blow up at eps = 1/2, so the grid is held above
    L4_SCAN_FLOOR.  The hyperbolic L4 quotients go in ``secondary``.
    """
    grid = _check_grid(grid, 0.5, 1.0, "eps")
    if min(grid) < L4_SCAN_FLOOR:
        raise NonConvergence(f"eps below {L4_SCAN_FLOOR} is not resolved", partial={"grid": grid})
    qs, q12 = [], []
    for e in grid:
        F = make_power_law(e)
        qs.append(evaluate_halfline(F, HYPERBOLIC_L4_RADIAL, tol).quotient)
        q12.append(evaluate_inequality(F, HYPERBOLIC_L4, tol).quotient)
    limit12 = extrapolate(grid, q12, 0.5, method)
    return ScanResult(grid, tuple(qs), extrapolate(grid, qs, 0.5, method),
                      HYPERBOLIC_L4_RADIAL.constant, method,
                      secondary={"l4_quotients": tuple(q12), "l4_limit": limit12,
                                 "l4_target": HYPERBOLIC_L4.constant})


# ------------------------------------------------------------------ maximization

@dataclass(frozen=True)
class MaximizeResult:
    params: tuple
    value: float
    evaluations: int
    reference: float | None = None

    @property
    def within_reference(self):
        return self.reference is None or self.value <= self.reference * (1.0 + 1e-6)


def maximize_quotient(evaluate, family, bounds, reference=None, grid_points=9, budget=400,
                      xtol=1e-6):
    """Largest ``evaluate(family(*params))`` over a box with at most three parameters.

    A coarse grid picks the start; then a bounded scalar search (one
    parameter) or Nelder-Mead (two or three) refines it.  Deterministic.
    """
    from scipy.optimize import minimize, minimize_scalar

    bounds = [tuple(map(float, b)) for b in bounds]
    if not 1 <= len(bounds) <= 3:
        raise ValueError("between one and three parameters are supported")
    count = 0
    best = [None, -math.inf]

    def value(params):
        nonlocal count
        count += 1
        if count > budget:
            raise BudgetExhausted(f"more than {budget} evaluations", best=tuple(best))
        params = tuple(float(min(max(p, lo), hi)) for p, (lo, hi) in zip(params, bounds))
        v = float(evaluate(family(*params)))
        if v > best[1]:
            best[0], best[1] = params, v
        return v

    axes = [np.linspace(lo, hi, grid_points) for lo, hi in bounds]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(bounds))
    for pt in mesh:
        value(pt)
    start = np.array(best[0])
    if len(bounds) == 1:
        lo, hi = bounds[0]
        step = (hi - lo) / (grid_points - 1)
        a, b = max(lo, start[0] - step), min(hi, start[0] + step)
        minimize_scalar(lambda t: -value((t,)), bounds=(a, b), method="bounded",
                        options={"xatol": xtol})
    else:
        minimize(lambda p: -value(p), start, method="Nelder-Mead",
                 options={"xatol": xtol, "fatol": 1e-12, "maxfev": budget - count})
    return MaximizeResult(best[0], best[1], count, reference)
