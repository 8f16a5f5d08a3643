"""Rearrangements of sampled functions on uniform grids."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NegativeInput


@dataclass(frozen=True)
class SampledFunction:
    """Values on the uniform grid start + spacing * k, k = 0..n-1."""

    start: float
    spacing: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if not self.spacing > 0:
            raise ValueError("spacing must be > 0")
        if vals.ndim != 1 or not np.all(np.isfinite(vals)):
            raise ValueError("values must be a finite 1D array")
        object.__setattr__(self, "values", vals)

    @classmethod
    def on_interval(cls, lo, hi, values):
        values = np.asarray(values, dtype=float)
        return cls(float(lo), (hi - lo) / (values.size - 1), values)

    @property
    def grid(self):
        return self.start + self.spacing * np.arange(self.values.size)

    def lp_sum(self, p):
        return float(np.sum(np.abs(self.values) ** p) * self.spacing)


def _nonnegative(f):
    if np.any(f.values < 0):
        raise NegativeInput("rearrangement needs nonnegative values")


def decreasing_rearrangement(f):
    """Values sorted in decreasing order on the same grid (a half-line [0, U])."""
    _nonnegative(f)
    return SampledFunction(f.start, f.spacing, np.sort(f.values)[::-1])


def symmetric_decreasing_x(f):
    """Largest value at the centre, then alternating left and right outwards."""
    _nonnegative(f)
    return SampledFunction(f.start, f.spacing, kernels.alternating_fill(f.values))


def dirichlet_energy(f, zero_left=True, zero_right=True):
    """sum (Delta f / h)^2 h, with optional zero extension beyond either end."""
    return kernels.dirichlet_energy(f.values, f.spacing, zero_left, zero_right)


def equimeasurable(f, g):
    return np.array_equal(np.sort(f.values), np.sort(g.values))
