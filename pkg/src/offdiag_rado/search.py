"""Formula-free computation of discrete off-diagonal Rado numbers.

Two independent routes:

* :func:`exists_valid_coloring` -- DFS over [1, n] branching on the smallest
  uncolored element (Red first) with forced-color propagation to fixpoint.
* :func:`brute_force_rado` -- enumerates every 2^n total coloring (vectorised
  with numpy); intended only as an oracle for small n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Color, DiscreteColoring, RadoResult, validate_discrete

DEFAULT_NODE_CAP = 10**7
BRUTE_FORCE_LIMIT = 22

_RED, _BLUE = 1, 2
_CODE = {None: 0, Color.RED: _RED, Color.BLUE: _BLUE}
_COLOR = {0: None, _RED: Color.RED, _BLUE: Color.BLUE}


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PartialColoring:
    """``assignment[i - 1]`` is the color of i, or None if uncolored."""

    assignment: tuple[Optional[Color], ...]

    @property
    def n(self) -> int:
        return len(self.assignment)

    @classmethod
    def empty(cls, n: int) -> "PartialColoring":
        return cls((None,) * n)

    @classmethod
    def from_dict(cls, n: int, colors: dict[int, Color]) -> "PartialColoring":
        cells: list[Optional[Color]] = [None] * n
        for element, col in colors.items():
            if not 1 <= element <= n:
                raise ValueError(f"element {element} outside [1, {n}]")
            cells[element - 1] = col
        return cls(tuple(cells))

    def __getitem__(self, element: int) -> Optional[Color]:
        return self.assignment[element - 1]

    def colored(self) -> dict[int, Color]:
        return {i: col for i, col in enumerate(self.assignment, start=1) if col is not None}

    def is_total(self) -> bool:
        return all(col is not None for col in self.assignment)


@dataclass(frozen=True)
class Fixpoint:
    state: PartialColoring


@dataclass(frozen=True)
class Conflict:
    triple: tuple[int, int, int]
    color: Color


class _Kernel:
    """Mutable propagation state over integer color codes with an undo trail."""

    __slots__ = ("n", "shift", "cells", "trail")

    def __init__(self, n: int, c: int, k: int):
        self.n = n
        self.shift = (0, c, k)
        self.cells = [0] * (n + 1)
        self.trail: list[int] = []

    def assign(self, v: int, code: int) -> None:
        self.cells[v] = code
        self.trail.append(v)

    def undo_to(self, mark: int) -> None:
        cells, trail = self.cells, self.trail
        while len(trail) > mark:
            cells[trail.pop()] = 0

    def propagate(self, queue: list[int]) -> Optional[tuple[tuple[int, int, int], int]]:
        """Close under forcing from the elements in ``queue``; return a conflict or None."""
        cells, n = self.cells, self.n
        while queue:
            v = queue.pop()
            col = cells[v]
            opp = 3 - col
            s = self.shift[col]
            # v as a summand: (v, y, v + y + s)
            for y in range(1, n - v - s + 1):
                z = v + y + s
                cy, cz = cells[y], cells[z]
                if cy == col:
                    if cz == col:
                        return ((min(v, y), max(v, y), z), col)
                    if cz == 0:
                        self.assign(z, opp)
                        queue.append(z)
                elif cy == 0 and cz == col:
                    self.assign(y, opp)
                    queue.append(y)
            # v as the sum: (x, v - s - x, v)
            t = v - s
            for x in range(1, t // 2 + 1):
                y = t - x
                cx, cy = cells[x], cells[y]
                if cx == col:
                    if cy == col:
                        return ((x, y, v), col)
                    if cy == 0:
                        self.assign(y, opp)
                        queue.append(y)
                elif cx == 0 and cy == col:
                    self.assign(x, opp)
                    queue.append(x)
                elif cx == 0 and x == y:
                    self.assign(x, opp)
                    queue.append(x)
        return None

    def first_uncolored(self, start: int = 1) -> int:
        cells = self.cells
        for v in range(start, self.n + 1):
            if cells[v] == 0:
                return v
        return 0


def propagate(state: PartialColoring, c: int, k: int) -> Fixpoint | Conflict:
    """Apply every forcing rule until nothing fires or a monochromatic triple appears.

    From Red x, y the c-equation forces ``z = x + y + c`` Blue; from Red x, z it
    forces ``y = z - x - c`` Blue. Blue and the k-equation act symmetrically.
    """
    kern = _Kernel(state.n, c, k)
    queue = []
    for element, col in state.colored().items():
        kern.cells[element] = _CODE[col]
        queue.append(element)
    queue.reverse()
    hit = kern.propagate(queue)
    if hit is not None:
        triple, code = hit
        return Conflict(triple, _COLOR[code])
    return Fixpoint(PartialColoring(tuple(_COLOR[code] for code in kern.cells[1:])))


class OutcomeKind(enum.Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    CAP_EXCEEDED = "cap-exceeded"


@dataclass(frozen=True)
class SearchOutcome:
    kind: OutcomeKind
    witness: Optional[DiscreteColoring] = None
    nodes: int = field(default=0, compare=False)

    @property
    def satisfiable(self) -> bool:
        return self.kind is OutcomeKind.SATISFIABLE


def exists_valid_coloring(c: int, k: int, n: int, cap_nodes: int = DEFAULT_NODE_CAP) -> SearchOutcome:
    """Decide whether some red/blue coloring of [1, n] avoids both solution types."""
    if not 1 <= c <= k:
        raise ValueError(f"need 1 <= c <= k, got c={c}, k={k}")
    if n < 1:
        raise ValueError("n must be positive")
    kern = _Kernel(n, c, k)
    nodes = 0
    # each frame: (trail mark, decision element, next color code to try)
    stack: list[tuple[int, int, int]] = []
    v = 1
    while True:
        if v == 0:
            witness = DiscreteColoring(tuple(_COLOR[code] for code in kern.cells[1:]))
            return SearchOutcome(OutcomeKind.SATISFIABLE, witness, nodes)
        stack.append((len(kern.trail), v, _RED))
        # pop frames until one has an untried color that propagates cleanly
        while True:
            if not stack:
                return SearchOutcome(OutcomeKind.UNSATISFIABLE, None, nodes)
            mark, v, code = stack.pop()
            kern.undo_to(mark)
            if code > _BLUE:
                continue
            nodes += 1
            if nodes > cap_nodes:
                return SearchOutcome(OutcomeKind.CAP_EXCEEDED, None, nodes)
            stack.append((mark, v, code + 1))
            kern.assign(v, code)
            if kern.propagate([v]) is None:
                break
        v = kern.first_uncolored(v + 1)


def min_rado_discrete(c: int, k: int, n_cap: int, cap_nodes: int = DEFAULT_NODE_CAP) -> RadoResult:
    """Smallest n <= n_cap with no valid coloring, scanning n upward from 1."""
    previous: Optional[DiscreteColoring] = None
    for n in range(1, n_cap + 1):
        outcome = exists_valid_coloring(c, k, n, cap_nodes)
        if outcome.kind is OutcomeKind.CAP_EXCEEDED:
            raise SearchCapExceeded(f"node budget {cap_nodes} exhausted at c={c}, k={k}, n={n}")
        if outcome.kind is OutcomeKind.UNSATISFIABLE:
            # downward closure: the last witness restricted stays valid
            assert previous is None or validate_discrete(previous.restrict(n - 1), c, k) is None
            return RadoResult.finite(n)
        previous = outcome.witness
    return RadoResult.exceeded(n_cap)


def _triples(shift: int, n: int) -> list[tuple[int, int, int]]:
    out = []
    for x in range(1, n + 1):
        for y in range(x, n - x - shift + 1):
            out.append((x, y, x + y + shift))
    return out


def enumerate_valid_colorings(c: int, k: int, n: int) -> np.ndarray:
    """Bitmasks (bit i-1 set = i red) of every valid coloring of [1, n]."""
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"enumeration limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    masks = np.arange(1 << n, dtype=np.uint32)
    red = [None] + [((masks >> np.uint32(i)) & np.uint32(1)).astype(bool) for i in range(n)]
    ok = np.ones(masks.shape, dtype=bool)
    for x, y, z in _triples(c, n):
        ok &= ~(red[x] & red[y] & red[z])
    for x, y, z in _triples(k, n):
        ok &= red[x] | red[y] | red[z]
    return masks[ok]


def brute_force_exists(c: int, k: int, n: int) -> bool:
    return enumerate_valid_colorings(c, k, n).size > 0


def brute_force_rado(c: int, k: int, n_cap: int) -> RadoResult:
    if n_cap > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refuses n_cap > {BRUTE_FORCE_LIMIT}")
    for n in range(1, n_cap + 1):
        if not brute_force_exists(c, k, n):
            return RadoResult.finite(n)
    return RadoResult.exceeded(n_cap)


def mask_to_coloring(mask: int, n: int) -> DiscreteColoring:
    return DiscreteColoring(tuple(Color.RED if mask >> i & 1 else Color.BLUE for i in range(n)))
