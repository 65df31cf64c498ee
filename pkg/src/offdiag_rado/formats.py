"""Line-oriented coloring files.

Discrete::

    discrete <n> <c> <k>
    1 R
    2 B
    ...

Continuous (rationals as ``num/den`` or integers)::

    continuous <alpha> <N> <c> <k>
    <lo> <lo_closed:0|1> <hi> <hi_closed:0|1> <R|B>
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .core import Color, DiscreteColoring, as_rational, format_rational
from .intervals import BoundedInterval, IntervalColoring, MalformedColoring


class ColoringParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class DiscreteColoringFile:
    coloring: DiscreteColoring
    c: int
    k: int


@dataclass(frozen=True)
class IntervalColoringFile:
    coloring: IntervalColoring
    c: Fraction
    k: Fraction


def dump_discrete(coloring: DiscreteColoring, c: int, k: int) -> str:
    lines = [f"discrete {coloring.n} {c} {k}"]
    lines += [f"{i} {col.value}" for i, col in enumerate(coloring.colors, start=1)]
    return "\n".join(lines) + "\n"


def dump_interval(coloring: IntervalColoring, c: Fraction, k: Fraction) -> str:
    fr = format_rational
    lines = [f"continuous {fr(coloring.alpha)} {fr(coloring.n)} {fr(c)} {fr(k)}"]
    for iv, col in coloring.pieces:
        lines.append(f"{fr(iv.lo)} {int(iv.lo_closed)} {fr(iv.hi)} {int(iv.hi_closed)} {col.value}")
    return "\n".join(lines) + "\n"


def _rational(token: str, line: int) -> Fraction:
    try:
        return as_rational(token)
    except (ValueError, ZeroDivisionError):
        raise ColoringParseError(f"bad rational {token!r}", line) from None


def _integer(token: str, line: int) -> int:
    value = _rational(token, line)
    if value.denominator != 1:
        raise ColoringParseError(f"expected an integer, got {token!r}", line)
    return int(value)


def _color(token: str, line: int) -> Color:
    try:
        return Color.parse(token)
    except ValueError as exc:
        raise ColoringParseError(str(exc), line) from None


def _flag(token: str, line: int) -> bool:
    if token not in ("0", "1"):
        raise ColoringParseError(f"boundary flag must be 0 or 1, got {token!r}", line)
    return token == "1"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped.split()


def parse_discrete(text: str) -> DiscreteColoringFile:
    lines = list(_content_lines(text))
    if not lines:
        raise ColoringParseError("empty file")
    lineno, head = lines[0]
    if len(head) != 4 or head[0] != "discrete":
        raise ColoringParseError("header must be 'discrete <n> <c> <k>'", lineno)
    n, c, k = (_integer(tok, lineno) for tok in head[1:])
    if n < 1:
        raise ColoringParseError("n must be positive", lineno)
    colors: list[Color] = []
    for lineno, fields in lines[1:]:
        if len(fields) != 2:
            raise ColoringParseError("expected '<integer> <R|B>'", lineno)
        element = _integer(fields[0], lineno)
        expected = len(colors) + 1
        if element < expected:
            raise ColoringParseError(f"duplicate or out-of-order element {element}", lineno)
        if element > expected:
            raise ColoringParseError(f"missing element {expected}", lineno)
        if element > n:
            raise ColoringParseError(f"element {element} exceeds n={n}", lineno)
        colors.append(_color(fields[1], lineno))
    if len(colors) != n:
        raise ColoringParseError(f"missing element {len(colors) + 1} (n={n})")
    return DiscreteColoringFile(DiscreteColoring(tuple(colors)), c, k)


def parse_interval(text: str) -> IntervalColoringFile:
    lines = list(_content_lines(text))
    if not lines:
        raise ColoringParseError("empty file")
    lineno, head = lines[0]
    if len(head) != 5 or head[0] != "continuous":
        raise ColoringParseError("header must be 'continuous <alpha> <N> <c> <k>'", lineno)
    alpha, n, c, k = (_rational(tok, lineno) for tok in head[1:])
    pieces = []
    for lineno, fields in lines[1:]:
        if len(fields) != 5:
            raise ColoringParseError("expected '<lo> <0|1> <hi> <0|1> <R|B>'", lineno)
        lo, hi = _rational(fields[0], lineno), _rational(fields[2], lineno)
        try:
            iv = BoundedInterval(lo, _flag(fields[1], lineno), hi, _flag(fields[3], lineno))
        except ValueError as exc:
            raise ColoringParseError(str(exc), lineno) from None
        pieces.append((iv, _color(fields[4], lineno)))
    if not pieces:
        raise ColoringParseError("no interval pieces")
    try:
        coloring = IntervalColoring(alpha, n, pieces, closed_right=pieces[-1][0].hi_closed)
    except MalformedColoring as exc:
        raise ColoringParseError(f"malformed coloring: {exc}") from None
    return IntervalColoringFile(coloring, c, k)


def parse_coloring(text: str) -> Union[DiscreteColoringFile, IntervalColoringFile]:
    for _, fields in _content_lines(text):
        if fields[0] == "discrete":
            return parse_discrete(text)
        if fields[0] == "continuous":
            return parse_interval(text)
        break
    else:
        raise ColoringParseError("empty file")
    raise ColoringParseError("first line must start with 'discrete' or 'continuous'", 1)


def read_coloring(path: Union[str, Path]):
    return parse_coloring(Path(path).read_text())
