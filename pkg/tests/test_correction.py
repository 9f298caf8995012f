import itertools
import json

import pytest

from aspfix.correction import (AdditionExpr, Correction, CorrectionSpec, addition_candidates, extract_correction,
                               instantiate_additions, instrument, min_correct)
from aspfix.errors import AspFixError, NoAdditionCandidates, NoCorrection, NotMaximal, SelectorCollision
from aspfix.maxcon import ALGORITHMS
from aspfix.parser import parse_program, parse_rule
from aspfix.program import Atom, atom, render
from aspfix.randprog import random_correction_instance
from aspfix.solver import is_answer_set, solve

STONES = parse_program(":- not move(a).\nmove(a) :- stone(b), not stone(c).\nstone(c).")
STONE_B = parse_rule("stone(b).")


def stones_ip():
    return instrument(STONES, [STONES.rule(3)], [STONE_B.with_id(1)])


def test_instrument_stones():
    ip = stones_ip()
    assert render(ip.program) == (":- not move(a).\n"
                                  "move(a) :- stone(b), not stone(c).\n"
                                  "stone(c) :- sel_r(3).\n"
                                  "stone(b) :- not sel_a(1).\n")
    assert ip.selectors == (atom("sel_r", 3), atom("sel_a", 1))


def test_instrument_nothing():
    ip = instrument(STONES, [], [])
    assert ip.program.structurally_equal(STONES) and ip.selectors == ()


def test_instrument_constraint():
    ip = instrument(parse_program("p."), [], [parse_rule(":- p.")])
    assert ip.program.rules[-1] == parse_rule(":- not sel_a(1), p.")


def test_selector_freshness():
    p = parse_program("sel_r(1). q :- sel_r(1).")
    ip = instrument(p, [p.rule(1)], [])
    assert ip.selector_names[0] == "sel_r_"
    with pytest.raises(SelectorCollision):
        instrument(p, [p.rule(1)], [], strict=True)


def test_choice_rules_not_gated():
    p = parse_program("0 { a }.")
    with pytest.raises(AspFixError):
        instrument(p, [p.rule(1)], [])


def test_extract_correction():
    ip = stones_ip()
    c = extract_correction([], ip)
    assert list(map(str, c.removed)) == ["stone(c)."] and list(map(str, c.added)) == ["stone(b)."]
    assert extract_correction(ip.selectors, ip).size == 0
    with pytest.raises(NotMaximal):
        extract_correction([atom("sel_a", 1)], ip, verify=True)
    extract_correction([], ip, verify=True)


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_stones_correction(algo):
    spec = CorrectionSpec(removable=["stone/1"], addable_rules=["stone(b)."])
    c = min_correct(STONES, spec, algo)
    assert c.to_dict()["remove"] == ["stone(c)."] and c.to_dict()["add"] == ["stone(b)."]
    assert is_answer_set(c.apply(STONES), c.witness)


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_consistent_program_empty_correction(algo):
    p = parse_program("a :- not b. b.")
    c = min_correct(p, CorrectionSpec(removable=["b/0"], addable_rules=[":- b."]), algo)
    assert c.size == 0


def test_no_correction():
    with pytest.raises(NoCorrection):
        min_correct(STONES, CorrectionSpec())


def test_spec_parsing(tmp_path):
    path = tmp_path / "x.spec.json"
    path.write_text(json.dumps({"removable": ["stone/1", 2], "addable_rules": ["stone(b)."]}))
    spec = CorrectionSpec.load(path)
    assert [r.rule_id for r in spec.resolve_removable(STONES)] == [2, 3]
    with pytest.raises(AspFixError):
        CorrectionSpec.from_dict({"remove": []})
    with pytest.raises(AspFixError):
        CorrectionSpec(addable_rules=["p(X) :- q(X)."]).addable()


def test_addition_expressions():
    e = AdditionExpr.parse("full(L):location(L)")
    p = parse_program("location(a). location(b). location(c).")
    assert addition_candidates(p, [e]) == [atom("full", "a"), atom("full", "b"), atom("full", "c")]
    assert addition_candidates(parse_program("q."), [e]) == []
    with pytest.raises(AspFixError):
        AdditionExpr.parse("p(X,Y):t(X)")


def test_instantiate_additions_removal_only():
    p = parse_program("a. b. :- a, b.")
    facts, calls = instantiate_additions(p, [p.rule(1), p.rule(2)], [])
    assert facts == [] and calls == 1
    # the single call must keep at least one removable rule or pick a candidate
    with pytest.raises(NoAdditionCandidates):
        instantiate_additions(STONES, [STONES.rule(3)], [])


def test_instantiate_additions_materializes():
    p = parse_program("loc(a). loc(b). :- not full(b).")
    facts, calls = instantiate_additions(p, [], [AdditionExpr.parse("full(L):loc(L)")])
    assert calls == 1 and atom("full", "b") in [r.head for r in facts]
    c = min_correct(p, CorrectionSpec(addition_exprs=["full(L):loc(L)"]), "x")
    assert list(map(str, c.added)) == ["full(b)."]


def _consistent(p):
    return solve(p).consistent


@pytest.mark.parametrize("seed", range(20))
def test_random_minimal(seed):
    p, removable, addable = random_correction_instance(seed)
    ip = instrument(p, removable, addable)
    for algo in ALGORITHMS:
        try:
            c = min_correct(p, _spec_for(p, removable, addable), algo)
        except NoCorrection:
            assert not _consistent(Correction(tuple(removable), tuple(addable)).apply(p))
            continue
        assert _consistent(c.apply(p))
        for kr in range(len(c.removed) + 1):
            for rr in itertools.combinations(c.removed, kr):
                for ka in range(len(c.added) + 1):
                    for aa in itertools.combinations(c.added, ka):
                        if kr + ka < c.size:
                            assert not _consistent(Correction(rr, aa).apply(p))
    assert len(ip.selectors) == len(removable) + len(addable)


def _spec_for(p, removable, addable):
    return CorrectionSpec(removable=[r.rule_id for r in removable], addable_rules=[str(r) for r in addable])
