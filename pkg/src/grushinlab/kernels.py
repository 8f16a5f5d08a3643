"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

Public names (``hyp2f1_diag_array``, ``psi_array``, ``theta_sums``,
``radial_theta_sums``, ``linear_convolve``, ``alternating_fill``, ``dirichlet_energy``) dispatch to
the backend chosen in :mod:`grushinlab._backend`.  Both implementations stay
reachable through :data:`NUMBA` and :data:`NUMPY` so that tests and the
benchmark can compare them directly.
"""

from math import exp, lgamma, log, pi, sqrt, sin, cos
from types import SimpleNamespace

import numpy as np

from ._backend import USE_NUMBA, njit

_SERIES_EPS = 1e-17
_MAX_TERMS = 100000
_D2_FLOOR = 1e-300


# ---------------------------------------------------------------- scalars

@njit(cache=True)
def digamma(x):
    """Digamma for x > 0 (recurrence up to 10, then the asymptotic series)."""
    r = 0.0
    while x < 10.0:
        r -= 1.0 / x
        x += 1.0
    f = 1.0 / (x * x)
    t = f * (-1.0 / 12 + f * (1.0 / 120 + f * (-1.0 / 252 + f * (
        1.0 / 240 + f * (-1.0 / 132 + f * (691.0 / 32760 - f / 12.0))))))
    return r + log(x) - 0.5 / x + t


@njit(cache=True)
def _hyp2f1_diag_scalar(s, x, xc):
    # F(s, s; 2s; x) with xc = 1 - x supplied separately for accuracy near 1
    if x <= 0.5:
        term = 1.0
        total = 1.0
        n = 0
        while n < _MAX_TERMS:
            term *= (s + n) * (s + n) / ((2.0 * s + n) * (n + 1.0)) * x
            total += term
            n += 1
            if abs(term) <= _SERIES_EPS * abs(total):
                break
        return total
    # logarithmic connection series in xc (c - a - b = 0 case)
    lnxc = log(xc)
    d1 = digamma(1.0)
    d2 = digamma(s)
    c = 1.0
    total = 0.0
    n = 0
    while n < _MAX_TERMS:
        term = c * (2.0 * d1 - 2.0 * d2 - lnxc)
        total += term
        c *= ((s + n) / (n + 1.0)) ** 2 * xc
        d1 += 1.0 / (n + 1.0)
        d2 += 1.0 / (s + n)
        n += 1
        if c * (abs(2.0 * d1 - 2.0 * d2 - lnxc) + 1.0) <= _SERIES_EPS * abs(total):
            break
    return exp(lgamma(2.0 * s) - 2.0 * lgamma(s)) * total


@njit(cache=True)
def _psi_scalar(s, u, dig_s, log_pref):
    # fundamental solution of -y^2 Lap + s(s-1) as a function of u = d^2
    if u <= 0.0:
        return np.inf
    if u >= 1.0:
        x = 1.0 / (1.0 + u)
        return exp(log_pref - s * log(1.0 + u)) * _hyp2f1_diag_scalar(s, x, 1.0 - x)
    xc = u / (1.0 + u)
    lnxc = log(xc)
    d1 = -0.5772156649015329
    d2 = dig_s
    c = 1.0
    total = 0.0
    n = 0
    while n < _MAX_TERMS:
        term = c * (2.0 * d1 - 2.0 * d2 - lnxc)
        total += term
        c *= ((s + n) / (n + 1.0)) ** 2 * xc
        d1 += 1.0 / (n + 1.0)
        d2 += 1.0 / (s + n)
        n += 1
        if c * (abs(2.0 * d1 - 2.0 * d2 - lnxc) + 1.0) <= _SERIES_EPS * abs(total):
            break
    return total * (1.0 + u) ** (-s) / (4.0 * pi)


def _psi_constants(s):
    return digamma(float(s)), 2.0 * lgamma(s) - lgamma(2.0 * s) - log(4.0 * pi)


# ---------------------------------------------------------------- numba

@njit(cache=True)
def _hyp2f1_diag_nb(s, x, xc):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _hyp2f1_diag_scalar(s, x[i], xc[i])
    return out


@njit(cache=True)
def _psi_nb(s, u, dig_s, log_pref):
    out = np.empty(u.shape[0])
    for i in range(u.shape[0]):
        out[i] = _psi_scalar(s, u[i], dig_s, log_pref)
    return out


@njit(cache=True)
def _theta_sums_nb(s, xz, yz, phiz, v, theta, wtheta, dig_s, log_pref):
    out = np.zeros(v.shape[0])
    for k in range(v.shape[0]):
        r = sqrt(v[k] / (1.0 + v[k]))
        one_m_r = 1.0 / ((1.0 + v[k]) * (1.0 + r))
        one_m_r2 = 1.0 / (1.0 + v[k])
        acc = 0.0
        for j in range(theta.shape[0]):
            phi = theta[j] + phiz
            sh = sin(0.5 * phi)
            re_b = one_m_r + 2.0 * r * sh * sh
            im_b = r * sin(phi)
            b2 = re_b * re_b + im_b * im_b
            xw = -2.0 * r * sin(phi) / b2
            yw = one_m_r2 / b2
            dx = xz - xw
            dy = yz - yw
            d2 = (dx * dx + dy * dy) / (4.0 * yz * yw)
            if d2 < _D2_FLOOR:
                d2 = _D2_FLOOR
            acc += wtheta[j] * _psi_scalar(s, d2, dig_s, log_pref)
        out[k] = acc
    return out


@njit(cache=True)
def _radial_d2(u0, v, sh2):
    # law of cosines at i, written without cancellation
    den = sqrt(u0 * (1.0 + v)) + sqrt(v * (1.0 + u0))
    lead = 0.0
    if den > 0.0:
        lead = (u0 - v) / den
        lead *= lead
    return lead + 4.0 * sqrt(u0 * (1.0 + u0) * v * (1.0 + v)) * sh2


@njit(cache=True)
def _radial_theta_sums_nb(s, u0, v, sh2, wtheta, dig_s, log_pref):
    n0 = u0.shape[0]
    nv = v.shape[1]
    out = np.zeros((n0, nv))
    for i in range(n0):
        for k in range(nv):
            acc = 0.0
            for j in range(sh2.shape[0]):
                d2 = _radial_d2(u0[i], v[i, k], sh2[j])
                if d2 < _D2_FLOOR:
                    d2 = _D2_FLOOR
                acc += wtheta[j] * _psi_scalar(s, d2, dig_s, log_pref)
            out[i, k] = acc
    return out


@njit(cache=True)
def _convolve_nb(a, b):
    n = a.shape[0]
    m = b.shape[0]
    out = np.zeros(n + m - 1, dtype=np.complex128)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            out[i + j] += ai * b[j]
    return out


@njit(cache=True)
def _alternating_fill_nb(values):
    n = values.shape[0]
    srt = np.sort(values)[::-1]
    out = np.empty(n)
    c = n // 2
    out[c] = srt[0]
    k = 1
    step = 1
    while k < n:
        left = c - step
        if left >= 0:
            out[left] = srt[k]
            k += 1
        right = c + step
        if k < n and right < n:
            out[right] = srt[k]
            k += 1
        step += 1
    return out


@njit(cache=True)
def _dirichlet_energy_nb(values, h, zero_left, zero_right):
    n = values.shape[0]
    acc = 0.0
    if zero_left:
        acc += values[0] * values[0]
    for i in range(n - 1):
        d = values[i + 1] - values[i]
        acc += d * d
    if zero_right:
        acc += values[n - 1] * values[n - 1]
    return acc / h


# ---------------------------------------------------------------- numpy

def _hyp2f1_diag_np(s, x, xc):
    x = np.asarray(x, dtype=float)
    xc = np.asarray(xc, dtype=float)
    out = np.empty_like(x)
    lo = x <= 0.5
    if lo.any():
        xl = x[lo]
        term = np.ones_like(xl)
        total = np.ones_like(xl)
        active = np.ones(xl.shape, dtype=bool)
        n = 0
        while active.any() and n < _MAX_TERMS:
            term = term * ((s + n) * (s + n) / ((2.0 * s + n) * (n + 1.0))) * xl
            total = np.where(active, total + term, total)
            active &= np.abs(term) > _SERIES_EPS * np.abs(total)
            n += 1
        out[lo] = total
    hi = ~lo
    if hi.any():
        out[hi] = exp(lgamma(2.0 * s) - 2.0 * lgamma(s)) * _log_series_np(
            s, xc[hi], digamma(float(s)))
    return out


def _log_series_np(s, xc, dig_s):
    lnxc = np.log(xc)
    d1 = -0.5772156649015329
    d2 = dig_s
    c = np.ones_like(xc)
    total = np.zeros_like(xc)
    active = np.ones(xc.shape, dtype=bool)
    n = 0
    while active.any() and n < _MAX_TERMS:
        term = c * (2.0 * d1 - 2.0 * d2 - lnxc)
        total = np.where(active, total + term, total)
        c = c * ((s + n) / (n + 1.0)) ** 2 * xc
        d1 += 1.0 / (n + 1.0)
        d2 += 1.0 / (s + n)
        n += 1
        active &= c * (np.abs(2.0 * d1 - 2.0 * d2 - lnxc) + 1.0) > _SERIES_EPS * np.abs(total)
    return total


def _psi_np(s, u, dig_s, log_pref):
    u = np.asarray(u, dtype=float)
    out = np.full(u.shape, np.inf)
    big = u >= 1.0
    if big.any():
        x = 1.0 / (1.0 + u[big])
        out[big] = np.exp(log_pref - s * np.log1p(u[big])) * _hyp2f1_diag_np(s, x, 1.0 - x)
    small = (u > 0.0) & ~big
    if small.any():
        us = u[small]
        out[small] = _log_series_np(s, us / (1.0 + us), dig_s) * (1.0 + us) ** (-s) / (4.0 * pi)
    return out


def _theta_sums_np(s, xz, yz, phiz, v, theta, wtheta, dig_s, log_pref):
    v = np.asarray(v, dtype=float)[:, None]
    phi = np.asarray(theta, dtype=float)[None, :] + phiz
    r = np.sqrt(v / (1.0 + v))
    re_b = 1.0 / ((1.0 + v) * (1.0 + r)) + 2.0 * r * np.sin(0.5 * phi) ** 2
    im_b = r * np.sin(phi)
    b2 = re_b * re_b + im_b * im_b
    xw = -2.0 * r * np.sin(phi) / b2
    yw = (1.0 / (1.0 + v)) / b2
    d2 = ((xz - xw) ** 2 + (yz - yw) ** 2) / (4.0 * yz * yw)
    d2 = np.maximum(d2, _D2_FLOOR)
    vals = _psi_np(s, d2.ravel(), dig_s, log_pref).reshape(d2.shape)
    return vals @ np.asarray(wtheta, dtype=float)


def _radial_theta_sums_np(s, u0, v, sh2, wtheta, dig_s, log_pref):
    u0 = np.asarray(u0, dtype=float)[:, None, None]
    v = np.asarray(v, dtype=float)[:, :, None]
    den = np.sqrt(u0 * (1.0 + v)) + np.sqrt(v * (1.0 + u0))
    with np.errstate(invalid="ignore", divide="ignore"):
        lead = np.where(den > 0, ((u0 - v) / np.where(den > 0, den, 1.0)) ** 2, 0.0)
    out = np.empty(v.shape[:2])
    # row-wise to bound memory
    for i in range(v.shape[0]):
        d2 = lead[i] + 4.0 * np.sqrt(u0[i] * (1.0 + u0[i]) * v[i] * (1.0 + v[i])) * sh2[None, :]
        d2 = np.maximum(d2, _D2_FLOOR)
        vals = _psi_np(s, d2.ravel(), dig_s, log_pref).reshape(d2.shape)
        out[i] = vals @ wtheta
    return out


def _convolve_np(a, b):
    return np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _alternating_fill_np(values):
    values = np.asarray(values, dtype=float)
    n = values.size
    c = n // 2
    steps = np.arange(1, n)
    offsets = np.empty(2 * (n - 1), dtype=int)
    offsets[0::2] = -steps
    offsets[1::2] = steps
    pos = np.concatenate(([c], c + offsets))
    pos = pos[(pos >= 0) & (pos < n)][:n]
    out = np.empty(n)
    out[pos] = np.sort(values)[::-1]
    return out


def _dirichlet_energy_np(values, h, zero_left, zero_right):
    v = np.asarray(values, dtype=float)
    pad = [0.0] if zero_left else []
    tail = [0.0] if zero_right else []
    full = np.concatenate((pad, v, tail))
    return float(np.sum(np.diff(full) ** 2) / h)


# ---------------------------------------------------------------- dispatch

def _wrap_psi(impl):
    def psi_array(s, u):
        dig_s, log_pref = _psi_constants(s)
        return impl(float(s), np.ascontiguousarray(u, dtype=float).ravel(), dig_s, log_pref)
    return psi_array


def _wrap_theta(impl):
    def theta_sums(s, xz, yz, phiz, v, theta, wtheta):
        dig_s, log_pref = _psi_constants(s)
        return impl(float(s), float(xz), float(yz), float(phiz),
                    np.ascontiguousarray(v, dtype=float),
                    np.ascontiguousarray(theta, dtype=float),
                    np.ascontiguousarray(wtheta, dtype=float), dig_s, log_pref)
    return theta_sums


def _wrap_radial(impl):
    def radial_theta_sums(s, u0, v, theta, wtheta):
        """sum_j wtheta_j psi_s(d^2) for z at radius u0[i], w at (v[i, k], theta_j)."""
        dig_s, log_pref = _psi_constants(s)
        u0 = np.ascontiguousarray(np.atleast_1d(u0), dtype=float)
        v = np.ascontiguousarray(np.atleast_2d(v), dtype=float)
        sh2 = np.ascontiguousarray(np.sin(0.5 * np.asarray(theta, dtype=float)) ** 2)
        return impl(float(s), u0, v, sh2,
                    np.ascontiguousarray(wtheta, dtype=float), dig_s, log_pref)
    return radial_theta_sums


def _wrap_hyp(impl):
    def hyp2f1_diag_array(s, x, xc=None):
        x = np.ascontiguousarray(x, dtype=float).ravel()
        xc = 1.0 - x if xc is None else np.ascontiguousarray(xc, dtype=float).ravel()
        return impl(float(s), x, xc)
    return hyp2f1_diag_array


def _wrap_energy(impl):
    def dirichlet_energy(values, h, zero_left=True, zero_right=True):
        return float(impl(np.ascontiguousarray(values, dtype=float), float(h),
                          bool(zero_left), bool(zero_right)))
    return dirichlet_energy


NUMBA = SimpleNamespace(
    hyp2f1_diag_array=_wrap_hyp(_hyp2f1_diag_nb),
    psi_array=_wrap_psi(_psi_nb),
    theta_sums=_wrap_theta(_theta_sums_nb),
    radial_theta_sums=_wrap_radial(_radial_theta_sums_nb),
    linear_convolve=lambda a, b: _convolve_nb(np.ascontiguousarray(a, dtype=complex),
                                              np.ascontiguousarray(b, dtype=complex)),
    alternating_fill=lambda v: _alternating_fill_nb(np.ascontiguousarray(v, dtype=float)),
    dirichlet_energy=_wrap_energy(_dirichlet_energy_nb),
)

NUMPY = SimpleNamespace(
    hyp2f1_diag_array=_wrap_hyp(_hyp2f1_diag_np),
    psi_array=_wrap_psi(_psi_np),
    theta_sums=_wrap_theta(_theta_sums_np),
    radial_theta_sums=_wrap_radial(_radial_theta_sums_np),
    linear_convolve=_convolve_np,
    alternating_fill=_alternating_fill_np,
    dirichlet_energy=_wrap_energy(_dirichlet_energy_np),
)

_ACTIVE = NUMBA if USE_NUMBA else NUMPY

hyp2f1_diag_array = _ACTIVE.hyp2f1_diag_array
psi_array = _ACTIVE.psi_array
theta_sums = _ACTIVE.theta_sums
radial_theta_sums = _ACTIVE.radial_theta_sums
linear_convolve = _ACTIVE.linear_convolve
alternating_fill = _ACTIVE.alternating_fill
dirichlet_energy = _ACTIVE.dirichlet_energy
