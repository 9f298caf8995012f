import pytest

from aspfix.errors import SafetyError
from aspfix.grounder import check_safety, ground, herbrand_universe
from aspfix.parser import parse_program
from aspfix.program import atom, render


def test_universe():
    assert herbrand_universe(parse_program("q(1). q(2).")) == {1, 2}
    assert herbrand_universe(parse_program("a :- not b.")) == set()
    stones = parse_program(":- not move(a). move(a) :- stone(b), not stone(c). stone(c).")
    assert herbrand_universe(stones) == {"a", "b", "c"}


def test_safety():
    assert check_safety(parse_program("p(X) :- q(X).")) == []
    v = check_safety(parse_program("p(X) :- not q(X)."))
    assert len(v) == 1 and v[0].rule_id == 1
    v = check_safety(parse_program("p(X,Y) :- q(X). q(1)."))
    assert list(v[0].variables) == ["Y"]
    with pytest.raises(SafetyError):
        ground(parse_program("p(X) :- not q(X). q(1)."))


def test_ground_substitution():
    g = ground(parse_program("p(X) :- q(X). q(1). q(2)."))
    assert set(map(str, g.rules)) == {"p(1) :- q(1).", "p(2) :- q(2).", "q(1).", "q(2)."}
    for r in g.rules:
        assert g.source_id(r.rule_id) in (1, 2, 3)


def test_ground_identity():
    p = parse_program("a :- not b. b :- not a.")
    assert ground(p) is p or render(ground(p)) == render(p)


def test_ground_pairs():
    g = ground(parse_program("r(X,Y) :- e(X), e(Y). e(1). e(2)."))
    heads = [r.head for r in g.rules if r.head.predicate == "r"]
    assert sorted(heads, key=lambda a: a.sort_key()) == [atom("r", 1, 1), atom("r", 1, 2),
                                                        atom("r", 2, 1), atom("r", 2, 2)]
