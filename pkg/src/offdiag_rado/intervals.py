"""Exact interval algebra over rationals and the continuous-coloring validator.

A monochromatic solution of ``x + y + t = z`` with x in A, y in B, z in C exists
exactly when the Minkowski sum ``A + B + t`` meets C, so validating an interval
coloring reduces to a finite number of interval intersection tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Color, Rational, Violation, as_rational, format_rational


@dataclass(frozen=True)
class BoundedInterval:
    lo: Fraction
    lo_closed: bool
    hi: Fraction
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self}")

    @classmethod
    def closed(cls, lo: Rational, hi: Rational) -> "BoundedInterval":
        return cls(lo, True, hi, True)

    @classmethod
    def half_open(cls, lo: Rational, hi: Rational) -> "BoundedInterval":
        return cls(lo, True, hi, False)

    @classmethod
    def point(cls, p: Rational) -> "BoundedInterval":
        return cls(p, True, p, True)

    def contains(self, p: Rational) -> bool:
        above = p > self.lo or (self.lo_closed and p == self.lo)
        below = p < self.hi or (self.hi_closed and p == self.hi)
        return above and below

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)},{format_rational(self.hi)}{right}"


def minkowski_sum(a: BoundedInterval, b: BoundedInterval, shift: Rational = 0) -> BoundedInterval:
    """``{x + y + shift : x in a, y in b}``; an endpoint is closed iff both summands' are."""
    shift = Fraction(shift)
    return BoundedInterval(
        a.lo + b.lo + shift,
        a.lo_closed and b.lo_closed,
        a.hi + b.hi + shift,
        a.hi_closed and b.hi_closed,
    )


def intersection(a: BoundedInterval, b: BoundedInterval) -> Optional[BoundedInterval]:
    if a.lo > b.lo:
        lo, lo_closed = a.lo, a.lo_closed
    elif b.lo > a.lo:
        lo, lo_closed = b.lo, b.lo_closed
    else:
        lo, lo_closed = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hi_closed = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hi_closed = b.hi, b.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed and b.hi_closed
    if lo < hi or (lo == hi and lo_closed and hi_closed):
        return BoundedInterval(lo, lo_closed, hi, hi_closed)
    return None


def intersects(a: BoundedInterval, b: BoundedInterval) -> bool:
    return intersection(a, b) is not None


def negate(a: BoundedInterval) -> BoundedInterval:
    return BoundedInterval(-a.hi, a.hi_closed, -a.lo, a.lo_closed)


class MalformedColoring(ValueError):
    pass


@dataclass(frozen=True)
class IntervalColoring:
    """Pieces partitioning ``[alpha, n)`` (or ``[alpha, n]`` when ``closed_right``)."""

    alpha: Fraction
    n: Fraction
    pieces: tuple[tuple[BoundedInterval, Color], ...]
    closed_right: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "n", as_rational(self.n))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        self.check()

    def check(self) -> None:
        if not self.pieces:
            raise MalformedColoring("no pieces")
        first = self.pieces[0][0]
        if first.lo != self.alpha or not first.lo_closed:
            raise MalformedColoring(f"coloring must start at [{format_rational(self.alpha)}, got {first}")
        for (prev, _), (cur, _) in zip(self.pieces, self.pieces[1:]):
            if cur.lo != prev.hi:
                kind = "gap" if cur.lo > prev.hi else "overlap"
                raise MalformedColoring(f"{kind} between {prev} and {cur}")
            if prev.hi_closed == cur.lo_closed:
                kind = "overlap" if prev.hi_closed else "gap"
                raise MalformedColoring(f"{kind} at {format_rational(cur.lo)} between {prev} and {cur}")
        last = self.pieces[-1][0]
        if last.hi != self.n or last.hi_closed != self.closed_right:
            raise MalformedColoring(f"coloring must end at {format_rational(self.n)}, got {last}")

    def of(self, color: Color) -> list[BoundedInterval]:
        return [iv for iv, col in self.pieces if col is color]

    def color_at(self, p: Rational) -> Optional[Color]:
        for iv, col in self.pieces:
            if iv.contains(p):
                return col
        return None

    def describe(self) -> str:
        parts = []
        for col in (Color.RED, Color.BLUE):
            ivs = self.of(col)
            parts.append(f"{col.word.capitalize()}=" + ("∪".join(str(iv) for iv in ivs) or "∅"))
        return ", ".join(parts)


def _witness(a: BoundedInterval, b: BoundedInterval, overlap: BoundedInterval, shift: Fraction):
    z = overlap.midpoint()
    target = z - shift
    # x must lie in a and in target - b
    window = intersection(a, minkowski_sum(negate(b), BoundedInterval.point(target)))
    assert window is not None, "overlap point not reachable from a + b"
    x = window.midpoint()
    return x, target - x, z


def validate_interval(coloring: IntervalColoring, c: Rational, k: Rational) -> Optional[Violation]:
    """Return a rational monochromatic witness, or None when the coloring is valid."""
    c, k = Fraction(c), Fraction(k)
    coloring.check()
    for color, shift in ((Color.RED, c), (Color.BLUE, k)):
        ivs = coloring.of(color)
        for i, a in enumerate(ivs):
            for b in ivs[i:]:
                sums = minkowski_sum(a, b, shift)
                for target in ivs:
                    overlap = intersection(sums, target)
                    if overlap is not None:
                        x, y, z = _witness(a, b, overlap, shift)
                        return Violation(tuple(sorted((x, y))) + (z,), color)
    return None


def pieces_from_bounds(bounds: Sequence[tuple[Rational, Rational, Color]]) -> list[tuple[BoundedInterval, Color]]:
    """Half-open pieces ``[lo, hi)`` from ``(lo, hi, color)`` triples."""
    return [(BoundedInterval.half_open(lo, hi), col) for lo, hi, col in bounds]
