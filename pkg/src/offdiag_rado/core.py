"""Shared data model: exact rationals, the two Schur-type equations, colorings,
Rado-number results, and solution detection on [1, n].

Red is always bound to the c-equation ``x + y + c = z`` and Blue to the
k-equation ``x + y + k = z``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

Rational = Union[int, Fraction]


def as_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Parse ``num/den`` or an integer into a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def word(self) -> str:
        return "red" if self is Color.RED else "blue"

    @classmethod
    def parse(cls, token: str) -> "Color":
        try:
            return cls(token.strip().upper())
        except ValueError:
            raise ValueError(f"unknown color {token!r} (expected R or B)") from None


class EqTag(enum.Enum):
    C = "c"
    K = "k"

    @property
    def color(self) -> Color:
        return Color.RED if self is EqTag.C else Color.BLUE

    @classmethod
    def for_color(cls, color: Color) -> "EqTag":
        return cls.C if color is Color.RED else cls.K


@dataclass(frozen=True)
class SchurEquation:
    """The relation ``x + y + shift = z``."""

    shift: Fraction
    tag: EqTag

    def __post_init__(self):
        object.__setattr__(self, "shift", as_rational(self.shift))

    @property
    def color(self) -> Color:
        return self.tag.color

    @classmethod
    def c_equation(cls, c: Rational) -> "SchurEquation":
        return cls(Fraction(c), EqTag.C)

    @classmethod
    def k_equation(cls, k: Rational) -> "SchurEquation":
        return cls(Fraction(k), EqTag.K)


def is_solution(eq: SchurEquation, x: Rational, y: Rational, z: Rational) -> bool:
    return Fraction(x) + Fraction(y) + eq.shift == Fraction(z)


def _integer_shift(eq: SchurEquation) -> int:
    if eq.shift.denominator != 1:
        raise ValueError(f"integer enumeration needs an integer shift, got {format_rational(eq.shift)}")
    return int(eq.shift)


def iter_solutions(eq: SchurEquation, n: int) -> Iterator[tuple[int, int, int]]:
    """Yield triples ``1 <= x <= y``, ``z <= n`` in lexicographic order."""
    shift = _integer_shift(eq)
    for x in range(1, n + 1):
        for y in range(x, n + 1):
            z = x + y + shift
            if z > n:
                break
            if z >= 1:
                yield (x, y, z)


def solutions_within(eq: SchurEquation, n: int) -> list[tuple[int, int, int]]:
    return list(iter_solutions(eq, n))


@dataclass(frozen=True)
class DiscreteColoring:
    """A total red/blue assignment on {1, ..., n}; ``colors[i - 1]`` is the color of i."""

    colors: tuple[Color, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if not self.colors:
            raise ValueError("a coloring needs at least one element")
        for col in self.colors:
            if not isinstance(col, Color):
                raise TypeError(f"expected Color, got {col!r}")

    @property
    def n(self) -> int:
        return len(self.colors)

    def __getitem__(self, element: int) -> Color:
        if not 1 <= element <= self.n:
            raise IndexError(f"element {element} outside [1, {self.n}]")
        return self.colors[element - 1]

    def elements(self, color: Color) -> list[int]:
        return [i for i, col in enumerate(self.colors, start=1) if col is color]

    def restrict(self, m: int) -> "DiscreteColoring":
        if not 1 <= m <= self.n:
            raise ValueError(f"cannot restrict to [1, {m}]")
        return DiscreteColoring(self.colors[:m])

    @classmethod
    def from_red(cls, n: int, red: Iterable[int]) -> "DiscreteColoring":
        red = set(red)
        stray = [r for r in red if not 1 <= r <= n]
        if stray:
            raise ValueError(f"red elements outside [1, {n}]: {sorted(stray)}")
        return cls(tuple(Color.RED if i in red else Color.BLUE for i in range(1, n + 1)))

    def runs(self) -> list[tuple[int, int, Color]]:
        """Maximal monochromatic blocks as ``(first, last, color)``."""
        out: list[tuple[int, int, Color]] = []
        start = 1
        for i in range(2, self.n + 2):
            if i == self.n + 1 or self.colors[i - 1] is not self.colors[start - 1]:
                out.append((start, i - 1, self.colors[start - 1]))
                start = i
        return out

    def describe(self) -> str:
        parts = []
        for lo, hi, col in self.runs():
            span = str(lo) if lo == hi else f"{lo}-{hi}"
            parts.append(f"{span}:{col.value}")
        return " ".join(parts)


@dataclass(frozen=True)
class Violation:
    triple: tuple
    color: Color

    def __str__(self):
        x, y, z = (format_rational(v) for v in self.triple)
        tag = EqTag.for_color(self.color).value
        return f"({x},{y},{z})_{tag} is {self.color.word}"


def validate_discrete(coloring: DiscreteColoring, c: int, k: int) -> Optional[Violation]:
    """Lexicographically first monochromatic triple, or None if the coloring is valid.

    Red triples are checked against the c-equation and blue triples against the
    k-equation; the two streams are merged in (x, y, z) order.
    """
    n = coloring.n
    cols = coloring.colors
    for x in range(1, n + 1):
        cx = cols[x - 1]
        shift = c if cx is Color.RED else k
        for y in range(x, n + 1):
            z = x + y + shift
            if z > n:
                break
            if cols[y - 1] is cx and cols[z - 1] is cx:
                return Violation((x, y, z), cx)
    return None


class ResultKind(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    EXCEEDED_CAP = "exceeded-cap"


@dataclass(frozen=True)
class RadoResult:
    kind: ResultKind
    value: Optional[Fraction] = None
    cap: Optional[Fraction] = None
    parity_indeterminate: bool = False

    @classmethod
    def finite(cls, value: Rational, parity_indeterminate: bool = False) -> "RadoResult":
        return cls(ResultKind.FINITE, value=Fraction(value), parity_indeterminate=parity_indeterminate)

    @classmethod
    def infinite(cls) -> "RadoResult":
        return cls(ResultKind.INFINITE)

    @classmethod
    def exceeded(cls, cap: Rational) -> "RadoResult":
        return cls(ResultKind.EXCEEDED_CAP, cap=Fraction(cap))

    @property
    def is_finite(self) -> bool:
        return self.kind is ResultKind.FINITE

    def __str__(self):
        if self.kind is ResultKind.FINITE:
            text = format_rational(self.value)
            return text + " (parity-indeterminate)" if self.parity_indeterminate else text
        if self.kind is ResultKind.INFINITE:
            return "INFINITE"
        return f"EXCEEDED_CAP({format_rational(self.cap)})"
