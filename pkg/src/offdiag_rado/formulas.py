"""Closed-form off-diagonal Rado numbers for ``x+y+c=z`` (red) / ``x+y+k=z`` (blue)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import RadoResult, Rational, as_rational


class Branch(enum.Enum):
    PARITY_INFINITE = "ParityInfinite"
    LOW = "LowBranch"
    HIGH = "HighBranch"


@dataclass(frozen=True)
class ParameterPair:
    c: Fraction
    k: Fraction
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "k", as_rational(self.k))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", as_rational(self.alpha))
        check_parameters(self.c, self.k, self.alpha)

    @property
    def integral(self) -> bool:
        return self.c.denominator == 1 and self.k.denominator == 1


def check_parameters(c: Rational, k: Rational, alpha: Optional[Rational] = None) -> None:
    if c < 1:
        raise ValueError(f"need c >= 1, got c={c}")
    if k < c:
        raise ValueError(f"need c <= k, got c={c}, k={k}")
    if alpha is not None and alpha <= 0:
        raise ValueError(f"need alpha > 0, got alpha={alpha}")


def _is_int(value: Rational) -> bool:
    return Fraction(value).denominator == 1


def branch_of(c: Rational, k: Rational) -> Branch:
    """Classify (c, k). Parity is only decided for integer pairs; k = 2c is LOW."""
    c, k = Fraction(c), Fraction(k)
    if _is_int(c) and _is_int(k) and (c - k) % 2 != 0:
        return Branch.PARITY_INFINITE
    return Branch.LOW if k <= 2 * c else Branch.HIGH


def rado_formula_discrete(c: int, k: int) -> RadoResult:
    if not (_is_int(c) and _is_int(k)):
        raise ValueError("discrete parameters must be integers")
    check_parameters(c, k)
    c, k = int(c), int(k)
    branch = branch_of(c, k)
    if branch is Branch.PARITY_INFINITE:
        return RadoResult.infinite()
    if branch is Branch.LOW:
        return RadoResult.finite(k + 3 * c + 5)
    return RadoResult.finite(2 * k + c + 4)


def rado_formula_continuous(c: Rational, k: Rational, alpha: Rational) -> RadoResult:
    """Value on [alpha, N]: ``k+3c+5*alpha`` (k <= 2c) or ``2k+c+4*alpha`` (k > 2c).

    Non-integer c or k get the finite-branch value flagged ``parity_indeterminate``.
    """
    c, k, alpha = as_rational(c), as_rational(k), as_rational(alpha)
    check_parameters(c, k, alpha)
    branch = branch_of(c, k)
    if branch is Branch.PARITY_INFINITE:
        return RadoResult.infinite()
    flagged = not (_is_int(c) and _is_int(k))
    if branch is Branch.LOW:
        return RadoResult.finite(k + 3 * c + 5 * alpha, parity_indeterminate=flagged)
    return RadoResult.finite(2 * k + c + 4 * alpha, parity_indeterminate=flagged)


def alpha_slope(branch: Branch) -> int:
    return {Branch.LOW: 5, Branch.HIGH: 4}[branch]
