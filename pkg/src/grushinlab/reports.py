"""Result records returned by the checking functions."""

from dataclasses import dataclass, field
import math


@dataclass(frozen=True)
class QuotientReport:
    """One evaluated inequality instance ``lhs <= constant * rhs``.

    ``rhs`` already includes the coefficient on the L2 term, so
    ``rhs = dirichlet + l2_coefficient * l2_term``.
    """

    lhs: float
    dirichlet: float
    l2_term: float
    l2_coefficient: float
    rhs: float
    quotient: float
    reference_constant: float
    label: str = ""

    @property
    def slack(self):
        return self.reference_constant - self.quotient

    @property
    def normalized(self):
        """quotient / reference_constant; at most 1 when the inequality holds."""
        return self.quotient / self.reference_constant

    @classmethod
    def build(cls, lhs, dirichlet, l2_term, l2_coefficient, reference_constant,
              label="", rhs=None):
        from .errors import NonpositiveRHS

        if rhs is None:
            rhs = dirichlet + l2_coefficient * l2_term
        if not rhs > 0:
            bad = cls(lhs, dirichlet, l2_term, l2_coefficient, rhs, math.nan,
                      reference_constant, label)
            raise NonpositiveRHS(f"{label or 'inequality'}: rhs = {rhs!r} <= 0", bad)
        return cls(lhs, dirichlet, l2_term, l2_coefficient, rhs, lhs / rhs,
                   reference_constant, label)


@dataclass(frozen=True)
class CheckReport:
    """A named pass/fail check with the numbers behind it."""

    name: str
    value: float
    target: float
    residual: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.passed)
