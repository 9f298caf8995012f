import itertools
import math

import pytest

from aspfix.errors import AspFixError, NoConsistentSubset
from aspfix.maxcon import (ALGORITHMS, atleast_of, call_bound, can_extend, choice_of, is_maximal, maxcon,
                           target_set)
from aspfix.parser import parse_program
from aspfix.program import Atom, atom, fact, render_rule
from aspfix.randprog import random_maxcon_instance
from aspfix.solver import solve

STONE_RULES = parse_program(":- not move(a). move(a) :- stone(b), not stone(c).")
sb, sc = atom("stone", "b"), atom("stone", "c")
a, b, c = Atom("a"), Atom("b"), Atom("c")
MUTUAL = parse_program(":- a, not b. :- b, not a.")


def test_choice_and_atleast_rules():
    assert render_rule(choice_of([a, b])) == "0 { a; b }."
    assert render_rule(choice_of([])) == "0 { }."
    assert render_rule(choice_of([sb])) == "0 { stone(b) }."
    assert render_rule(atleast_of([a, b])) == "1 { a; b }."
    assert render_rule(atleast_of([Atom("x")])) == "1 { x }."
    with pytest.raises(AspFixError):
        atleast_of([])


def test_can_extend():
    assert can_extend(STONE_RULES, [sb, sc], []) == {sb}
    assert can_extend(STONE_RULES, [sb, sc], [sc]) is None
    assert can_extend(parse_program("a."), [], []) == frozenset()


def test_is_maximal():
    assert not is_maximal(MUTUAL, [a, b], [])
    assert is_maximal(STONE_RULES, [sb, sc], [sb])
    assert is_maximal(MUTUAL, [a, b], [a, b])


def test_naive_single_extension_check_is_wrong():
    # Adding one atom at a time suggests {} is maximal, yet {a, b} is consistent.
    def consistent(facts):
        return solve(MUTUAL.extend([fact(x) for x in facts])).consistent

    assert consistent([]) and not consistent([a]) and not consistent([b])
    assert consistent([a, b])
    assert not is_maximal(MUTUAL, [a, b], [])


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_stones_fragment(algo):
    assert maxcon(STONE_RULES, [sb, sc], algo).subset == {sb}
    assert maxcon(STONE_RULES, [sc, sb], algo).subset == {sb}


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_non_monotone(algo):
    assert maxcon(MUTUAL, [a, b], algo).subset == {a, b}


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_empty_target(algo):
    res = maxcon(parse_program("a."), [], algo)
    assert res.subset == frozenset() and res.oracle_calls == 1


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_infeasible(algo):
    with pytest.raises(NoConsistentSubset):
        maxcon(parse_program(":- not a."), [b], algo)


def test_maxcard_examples():
    assert maxcon(parse_program(":- a, not b."), [a, b], "x").subset == {a, b}
    p = parse_program(":- a, b. :- a, c. :- b, c.")
    assert len(maxcon(p, [a, b, c], "x").subset) == 1


def test_unit_hand_trace():
    res = maxcon(STONE_RULES, [sc, sb], "u")
    assert res.oracle_calls <= 3


def test_progression_unconstrained_is_logarithmic():
    s = [Atom(f"t{i}") for i in range(16)]
    p = parse_program("z.")
    res = maxcon(p, s, "p")
    assert res.subset == set(s)
    # feasibility, then chunks of 1, 2, 4, 8 and a final single atom
    assert res.oracle_calls <= 2 + math.log2(len(s))
    res = maxcon(parse_program("z. :- t0, not z."), s, "a")
    assert res.subset == set(s)


def test_target_set_validation():
    with pytest.raises(AspFixError):
        target_set([a, a])
    assert sorted(target_set([a, b, c], shuffle_seed=3), key=Atom.sort_key) == [a, b, c]


def test_unknown_algorithm():
    with pytest.raises(AspFixError):
        maxcon(MUTUAL, [a], "z")


def _consistent_subsets(p, s):
    out = []
    for k in range(len(s) + 1):
        for sub in itertools.combinations(s, k):
            if solve(p.extend([fact(x) for x in sub])).consistent:
                out.append(frozenset(sub))
    return out


@pytest.mark.parametrize("seed", range(25))
def test_random_maximal(seed):
    p, s = random_maxcon_instance(seed, max_atoms=8, max_rules=12, max_targets=6)
    subsets = _consistent_subsets(p, s)
    for algo in ALGORITHMS:
        if not subsets:
            with pytest.raises(NoConsistentSubset):
                maxcon(p, s, algo)
            continue
        res = maxcon(p, s, algo)
        assert res.subset in subsets
        assert not any(res.subset < other for other in subsets)
        bound = call_bound(algo, len(s))
        assert bound is None or res.oracle_calls <= bound
        if algo == "x":
            assert len(res.subset) == max(map(len, subsets))
