"""Gamma, Beta, the diagonal 2F1(s, s; 2s; x) and the kernel psi_s(u).

psi_s is the fundamental solution of L_s = -y^2 Lap + s(s-1) as a function of
u = d^2(z, w).  It is evaluated two ways: as an Euler-type integral over
[0, 1] and through 2F1; ``psi`` returns both together with their agreement.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .errors import ArgumentOutOfRange, NonpositiveArgument
from .quadrature import DecayHint, integrate_interval, integrate_unit

FOUR_PI = 4.0 * math.pi


def gamma(x):
    if not x > 0:
        raise NonpositiveArgument(f"gamma needs x > 0, got {x}")
    return math.gamma(x)


def beta(a, b):
    if not (a > 0 and b > 0):
        raise NonpositiveArgument(f"beta needs a, b > 0, got {a}, {b}")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(x >= 1.0) or np.any(x < 0.0) or np.any(~np.isfinite(x)):
        raise ArgumentOutOfRange("hyp2f1_diag needs 0 <= x < 1")
    return x


def hyp2f1_diag(s, x):
    """F(s, s; 2s; x) for s >= 1/2 and 0 <= x < 1 (scalar or array).

    Power series for x <= 1/2, the logarithmic connection series in 1 - x
    above that, so accuracy does not degrade as x approaches 1.
    """
    if not s >= 0.5:
        raise ArgumentOutOfRange(f"hyp2f1_diag needs s >= 1/2, got {s}")
    xa = _check_x(x)
    out = kernels.hyp2f1_diag_array(s, xa.ravel())
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def hyp2f1_diag_integral(s, x, tol=1e-12):
    """Euler integral Gamma(2s)/Gamma(s)^2 int_0^1 [t(1-t)]^(s-1) (1 - x t)^(-s) dt."""
    x = float(_check_x(x))
    c = math.exp(math.lgamma(2.0 * s) - 2.0 * math.lgamma(s))

    def f(t, tc):
        return (t * tc) ** (s - 1.0) * (tc + (1.0 - x) * t) ** -s

    return c * integrate_unit(f, tol, complement=True).value


def psi_integral(u, s, tol=1e-12):
    """(1/4 pi) int_0^1 [t(1-t)]^(s-1) (t + u)^(-s) dt."""
    if not u > 0:
        raise NonpositiveArgument(f"psi needs u > 0, got {u}")
    if s >= 1.0:
        # bounded integrand with a peak of width ~u at t = 0
        def f(t):
            return (t * (1.0 - t)) ** (s - 1.0) * (t + u) ** -s

        hint = DecayHint(breaks=(u,) if u < 0.5 else ())
        val = integrate_interval(f, 0.0, 1.0, tol, hint).value
    else:
        def g(t, tc):
            return (t * tc) ** (s - 1.0) * (t + u) ** -s

        val = integrate_unit(g, tol, complement=True).value
    return val / FOUR_PI


def psi_hypergeometric(u, s):
    """Closed form via 2F1; vectorized over u."""
    ua = np.asarray(u, dtype=float)
    if np.any(ua <= 0):
        raise NonpositiveArgument("psi needs u > 0")
    out = kernels.psi_array(s, ua.ravel())
    return float(out[0]) if ua.ndim == 0 else out.reshape(ua.shape)


def psi_prefactor(s):
    """Gamma(s)^2 / (4 pi Gamma(2s)), the coefficient of u^-s as u -> inf."""
    return math.exp(2.0 * math.lgamma(s) - math.lgamma(2.0 * s)) / FOUR_PI


def psi_large_u(u, s):
    return psi_prefactor(s) * np.asarray(u, dtype=float) ** -s


def psi_small_u(u):
    return -np.log(np.asarray(u, dtype=float)) / FOUR_PI


@dataclass(frozen=True)
class PsiEvaluation:
    u: float
    s: float
    value_integral: float
    value_hypergeometric: float

    @property
    def agreement(self):
        a, b = self.value_integral, self.value_hypergeometric
        return abs(a - b) / max(abs(a), abs(b))

    @property
    def value(self):
        return self.value_hypergeometric


def psi(u, s, tol=1e-12):
    """Both representations of psi_s(u) for u > 0."""
    u = float(u)
    s = float(s)
    return PsiEvaluation(u, s, psi_integral(u, s, tol), psi_hypergeometric(u, s))
