"""Lower-bound colorings: block colorings below the Rado number and the parity coloring."""

from __future__ import annotations

from fractions import Fraction

from .core import Color, DiscreteColoring, Rational, as_rational
from .formulas import Branch, branch_of, check_parameters, rado_formula_continuous
from .intervals import BoundedInterval, IntervalColoring, MalformedColoring, validate_interval


class RepairFailed(ValueError):
    pass


def lower_bound_coloring_discrete(c: int, k: int) -> DiscreteColoring:
    """Valid coloring of [1, R - 1] where R is the finite Rado number for (c, k)."""
    check_parameters(c, k)
    branch = branch_of(c, k)
    if branch is Branch.PARITY_INFINITE:
        raise ValueError(f"c={c}, k={k} differ in parity; no finite lower-bound block coloring")
    if branch is Branch.LOW:
        n = k + 3 * c + 4
        red = list(range(1, c + 2)) + list(range(k + 2 * c + 4, n + 1))
    else:
        n = 2 * k + c + 3
        red = range(k + 2, n + 1)
    return DiscreteColoring.from_red(n, red)


def parity_coloring(c: int, k: int, n: int) -> DiscreteColoring:
    """Odd elements red when c is even (k odd); even elements red when c is odd (k even)."""
    if (c - k) % 2 == 0:
        raise ValueError(f"parity coloring needs c and k of different parity, got c={c}, k={k}")
    red_residue = 1 if c % 2 == 0 else 0
    return DiscreteColoring(tuple(Color.RED if i % 2 == red_residue else Color.BLUE for i in range(1, n + 1)))


def printed_continuous_sets(c: Rational, k: Rational, alpha: Rational) -> list[tuple[BoundedInterval, Color]]:
    """The block sets in the literal form the source proof writes them (they do not tile)."""
    c, k, a = Fraction(c), Fraction(k), Fraction(alpha)
    if branch_of(c, k) is Branch.LOW:
        return [
            (BoundedInterval.half_open(a, c + a), Color.RED),
            (BoundedInterval.half_open(c + 2 * a, k + 2 * c + 3 * a), Color.BLUE),
            (BoundedInterval.half_open(k + 2 * c + 4 * a, k + 3 * c + 5 * a), Color.RED),
        ]
    return [
        (BoundedInterval.half_open(a, k + a), Color.BLUE),
        (BoundedInterval.half_open(k + a, 2 * k + c + 4 * a), Color.RED),
    ]


def repaired_continuous_sets(c: Rational, k: Rational, alpha: Rational) -> list[tuple[BoundedInterval, Color]]:
    """Integer block endpoints ``p*k + q*c + r`` mapped to ``p*k + q*c + r*alpha``."""
    c, k, a = Fraction(c), Fraction(k), Fraction(alpha)
    if branch_of(c, k) is Branch.LOW:
        return [
            (BoundedInterval.half_open(a, c + 2 * a), Color.RED),
            (BoundedInterval.half_open(c + 2 * a, k + 2 * c + 4 * a), Color.BLUE),
            (BoundedInterval.half_open(k + 2 * c + 4 * a, k + 3 * c + 5 * a), Color.RED),
        ]
    return [
        (BoundedInterval.half_open(a, k + 2 * a), Color.BLUE),
        (BoundedInterval.half_open(k + 2 * a, 2 * k + c + 4 * a), Color.RED),
    ]


def lower_bound_coloring_continuous(c: Rational, k: Rational, alpha: Rational) -> IntervalColoring:
    """Valid interval coloring of ``[alpha, N)``, N the continuous Rado number.

    Raises RepairFailed if the repaired block coloring does not tile or does not
    validate; the result is never returned unchecked.
    """
    c, k, alpha = as_rational(c), as_rational(k), as_rational(alpha)
    result = rado_formula_continuous(c, k, alpha)
    if not result.is_finite:
        raise ValueError(f"c={c}, k={k}: continuous Rado number is infinite (parity)")
    try:
        coloring = IntervalColoring(alpha, result.value, repaired_continuous_sets(c, k, alpha))
    except MalformedColoring as exc:
        raise RepairFailed(f"repaired sets do not tile [alpha, N): {exc}") from exc
    violation = validate_interval(coloring, c, k)
    if violation is not None:
        raise RepairFailed(f"repaired coloring for c={c}, k={k}, alpha={alpha} fails: {violation}")
    return coloring
