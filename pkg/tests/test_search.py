from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from offdiag_rado.core import Color, DiscreteColoring, ResultKind, validate_discrete
from offdiag_rado.search import (
    BRUTE_FORCE_LIMIT,
    Conflict,
    Fixpoint,
    OutcomeKind,
    PartialColoring,
    SearchCapExceeded,
    brute_force_exists,
    brute_force_rado,
    enumerate_valid_colorings,
    exists_valid_coloring,
    mask_to_coloring,
    min_rado_discrete,
    propagate,
)

from _oracles import any_valid_coloring, valid_by_definition

R, B = Color.RED, Color.BLUE

# frozen from _oracles.rado_by_enumeration (pure itertools enumeration)
ENUMERATED_RADO = {(1, 1): 9, (1, 3): 11, (2, 2): 13}


def test_frozen_values_still_match_enumeration():
    from _oracles import rado_by_enumeration

    for (c, k), value in ENUMERATED_RADO.items():
        assert rado_by_enumeration(c, k, 14) == value


class TestPropagate:
    def test_red_one_forces_three_blue(self):
        res = propagate(PartialColoring.from_dict(8, {1: R}), 1, 1)
        assert isinstance(res, Fixpoint)
        assert res.state[3] is B

    def test_blue_one_forces_three_red(self):
        res = propagate(PartialColoring.from_dict(8, {1: B}), 1, 1)
        assert isinstance(res, Fixpoint)
        assert res.state[3] is R

    @pytest.mark.parametrize("first", [R, B])
    def test_at_the_rado_number_propagation_alone_refutes(self, first):
        # the forcing chains are pure propagation, so [1, 9] closes from either color of 1
        res = propagate(PartialColoring.from_dict(9, {1: first}), 1, 1)
        assert isinstance(res, Conflict)

    def test_complete_red_triple_conflicts(self):
        res = propagate(PartialColoring.from_dict(3, {1: R, 3: R}), 1, 1)
        assert res == Conflict((1, 1, 3), R)

    def test_sum_direction(self):
        # x red and z red force y blue: (1, y, 7) with c=2 gives y=4
        res = propagate(PartialColoring.from_dict(7, {1: R, 7: R}), 2, 2)
        assert isinstance(res, Fixpoint)
        assert res.state[4] is B

    def test_empty_state_is_fixpoint(self):
        res = propagate(PartialColoring.empty(5), 1, 1)
        assert res == Fixpoint(PartialColoring.empty(5))


partial = st.integers(1, 10).flatmap(
    lambda n: st.lists(st.sampled_from([None, R, B]), min_size=n, max_size=n).map(tuple)
)
params = st.tuples(st.integers(1, 3), st.integers(0, 3)).map(lambda t: (t[0], t[0] + t[1]))


@settings(max_examples=150, deadline=None)
@given(partial, params)
def test_propagation_soundness(cells, ck):
    """A forced element flipped admits no valid completion; conflicts admit none at all."""
    c, k = ck
    n = len(cells)
    state = PartialColoring(cells)
    res = propagate(state, c, k)
    completions = [
        cols for cols in product("RB", repeat=n)
        if all(cell is None or cell.value == col for cell, col in zip(cells, cols))
        and valid_by_definition(cols, c, k)
    ]
    if isinstance(res, Conflict):
        assert completions == []
        x, y, z = res.triple
        col = res.color
        assert x + y + (c if col is R else k) == z
        return
    out = res.state
    for i in range(1, n + 1):
        assert cells[i - 1] is None or out[i] is cells[i - 1]
    forced = {i for i in range(1, n + 1) if cells[i - 1] is None and out[i] is not None}
    for cols in completions:
        for i in forced:
            assert cols[i - 1] == out[i].value


def test_search_examples():
    sat = exists_valid_coloring(1, 1, 8)
    assert sat.kind is OutcomeKind.SATISFIABLE
    assert validate_discrete(sat.witness, 1, 1) is None
    assert exists_valid_coloring(1, 1, 9).kind is OutcomeKind.UNSATISFIABLE
    parity = exists_valid_coloring(1, 2, 50)
    assert parity.satisfiable and validate_discrete(parity.witness, 1, 2) is None


def test_search_cap():
    assert exists_valid_coloring(3, 3, 17, cap_nodes=1).kind is OutcomeKind.CAP_EXCEEDED
    with pytest.raises(SearchCapExceeded):
        min_rado_discrete(3, 3, 20, cap_nodes=1)


def test_search_is_deterministic():
    a = exists_valid_coloring(2, 4, 14)
    b = exists_valid_coloring(2, 4, 14)
    assert a.witness == b.witness and a.nodes == b.nodes


def test_search_branches_red_first():
    # n=1: nothing constrains element 1, so the first witness colors it red
    assert exists_valid_coloring(1, 1, 1).witness == DiscreteColoring((R,))


@pytest.mark.parametrize("c, k", [(1, 1), (1, 3), (2, 2), (2, 4), (3, 3)])
def test_search_matches_enumeration(c, k):
    for n in range(1, 15):
        assert exists_valid_coloring(c, k, n).satisfiable == any_valid_coloring(c, k, n), n


def test_min_rado_examples():
    assert min_rado_discrete(1, 1, 20) == min_rado_discrete(1, 1, 20)
    assert min_rado_discrete(1, 1, 20).value == ENUMERATED_RADO[(1, 1)]
    assert min_rado_discrete(1, 3, 20).value == ENUMERATED_RADO[(1, 3)]
    res = min_rado_discrete(1, 2, 40)
    assert res.kind is ResultKind.EXCEEDED_CAP and res.cap == 40


@pytest.mark.parametrize("c, k", [(1, 1), (1, 3), (2, 2)])
def test_unsat_is_monotone(c, k):
    r = ENUMERATED_RADO[(c, k)]
    for n in range(r, r + 4):
        assert exists_valid_coloring(c, k, n).kind is OutcomeKind.UNSATISFIABLE


def test_brute_force_examples():
    assert brute_force_rado(1, 1, 20).value == 9
    assert brute_force_rado(2, 2, 20).value == 13
    assert brute_force_rado(1, 2, 16).kind is ResultKind.EXCEEDED_CAP
    with pytest.raises(ValueError):
        brute_force_rado(1, 1, BRUTE_FORCE_LIMIT + 1)


@pytest.mark.parametrize("c, k, n", [(1, 1, 8), (1, 3, 10), (2, 2, 9)])
def test_brute_force_matches_itertools(c, k, n):
    masks = enumerate_valid_colorings(c, k, n)
    expected = sum(valid_by_definition(cols, c, k) for cols in product("RB", repeat=n))
    assert masks.size == expected
    for m in masks[:50]:
        assert validate_discrete(mask_to_coloring(int(m), n), c, k) is None
    assert brute_force_exists(c, k, n) == (expected > 0)
