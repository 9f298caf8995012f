import io
import itertools

import pytest

from aspfix.errors import BudgetExceeded, CeilingExceeded
from aspfix.parser import parse_program
from aspfix.program import Atom, Program, fact
from aspfix.randprog import random_program
from aspfix.solver import Backend, SolverConfig, SolveResult, enumerate_models, is_answer_set, solve
from aspfix.solver.cdcl import luby

BACKENDS = [SolverConfig(backend=Backend.BRUTE), SolverConfig(backend=Backend.SEARCH)]
STONES = parse_program(":- not move(a). move(a) :- stone(b), not stone(c). stone(c).")
a, b = Atom("a"), Atom("b")


def family(p, cfg):
    return {frozenset(m) for m in enumerate_models(p, cfg=cfg)}


@pytest.mark.parametrize("cfg", BACKENDS, ids=["brute", "search"])
def test_examples(cfg):
    assert not solve(STONES, cfg).consistent
    even = parse_program("a :- not b. b :- not a.")
    assert solve(even, cfg).model in ({a}, {b})
    assert family(even, cfg) == {frozenset({a}), frozenset({b})}
    assert not solve(parse_program(":- not a."), cfg).consistent
    assert family(STONES, cfg) == set()
    assert family(parse_program("0 { a; b }."), cfg) == {frozenset(), frozenset({a}), frozenset({b}),
                                                         frozenset({a, b})}


@pytest.mark.parametrize("cfg", BACKENDS, ids=["brute", "search"])
def test_positive_loop_unfounded(cfg):
    p = parse_program("a :- b. b :- a. c :- not a.")
    assert family(p, cfg) == {frozenset({Atom("c")})}


def test_result_invariant():
    with pytest.raises(Exception):
        SolveResult(True, None)


def test_brute_ceiling():
    p = Program(tuple(fact(Atom(f"x{i}"), i + 1) for i in range(5)))
    with pytest.raises(CeilingExceeded):
        solve(p, SolverConfig(backend=Backend.BRUTE, ceiling=4))


def test_budget():
    with pytest.raises(BudgetExceeded):
        solve(parse_program("a :- not b. b :- not a."), SolverConfig(deadline=0.0))


def test_luby():
    assert [luby(i) for i in range(15)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_dump():
    out = io.StringIO()
    solve(STONES, SolverConfig(), dump=out)
    text = out.getvalue()
    assert text.startswith("p cnf") and "c atom" in text


def test_models_are_distinct_answer_sets():
    p = random_program(7)
    ms = enumerate_models(p)
    assert len(ms) == len(set(ms))
    assert all(is_answer_set(p, m) for m in ms)


@pytest.mark.parametrize("seed", range(40))
def test_backends_agree_small(seed):
    p = random_program(seed, max_atoms=8, max_rules=15)
    assert family(p, BACKENDS[0]) == family(p, BACKENDS[1])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_search_seed_independent(seed):
    p = random_program(100 + seed)
    base = family(p, SolverConfig(seed=0))
    assert family(p, SolverConfig(seed=seed * 17 + 3)) == base
