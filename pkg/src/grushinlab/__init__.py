"""Numerical verification of sharp Sobolev and Hardy-Littlewood-Sobolev
inequalities for the Grushin operator and the hyperbolic half-plane."""

from ._backend import backend_name
from .errors import GrushinLabError
from .functionals import (GRUSHIN_2D_CONSTANT, GRUSHIN_3D_CONSTANT, SpectralParams,
                          grushin_quotient_2d, grushin_quotient_3d, hyperbolic_quotient)
from .profiles import make_bump, make_grushin_extremal, make_power_law
from .reports import QuotientReport

__version__ = "0.1.0"

__all__ = [
    "GRUSHIN_2D_CONSTANT",
    "GRUSHIN_3D_CONSTANT",
    "GrushinLabError",
    "QuotientReport",
    "SpectralParams",
    "backend_name",
    "grushin_quotient_2d",
    "grushin_quotient_3d",
    "hyperbolic_quotient",
    "make_bump",
    "make_grushin_extremal",
    "make_power_law",
]
