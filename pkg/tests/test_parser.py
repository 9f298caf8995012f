import pytest
from hypothesis import given, strategies as st

from aspfix.errors import ParseError
from aspfix.parser import parse_atom, parse_atoms, parse_program, parse_rule
from aspfix.program import Atom, RuleKind, atom


def test_normal_rule():
    r = parse_rule("a :- b, not c.")
    assert r.kind is RuleKind.NORMAL
    assert r.head == Atom("a") and r.body_pos == (Atom("b"),) and r.body_neg == (Atom("c"),)


def test_constraint():
    r = parse_rule(":- not move(a).")
    assert r.kind is RuleKind.CONSTRAINT
    assert r.body_neg == (atom("move", "a"),) and not r.body_pos


def test_choice():
    r = parse_rule("1 { p(1); p(2) }.")
    assert r.kind is RuleKind.CHOICE and r.choice_bound == 1
    assert r.choice_atoms == (atom("p", 1), atom("p", 2))
    assert parse_rule("{ a }.").choice_bound == 0


def test_comments_and_ids():
    p = parse_program("% header\na. % trailing\nb :- a.\n")
    assert [r.rule_id for r in p.rules] == [1, 2]


def test_arity_clash_reports_location():
    with pytest.raises(ParseError) as exc:
        parse_program("p(1).\np(1,2).", filename="x.lp")
    assert str(exc.value).startswith("x.lp:2:")


def test_bound_too_large():
    with pytest.raises(ParseError):
        parse_rule("3 { a; b }.")


@pytest.mark.parametrize("text", ["a :- .", "a", ":- not .", "p(.", "1 { a, b }."])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_program(text)


def test_parse_atoms():
    assert parse_atoms("p(1). q(a)\nr") == [atom("p", 1), atom("q", "a"), Atom("r")]
    assert parse_atoms("") == []
    assert parse_atom("p(X)").variables()[0].name == "X"


@given(st.integers(min_value=-50, max_value=50), st.sampled_from(["a", "b1", "c_d"]))
def test_term_round_trip(n, c):
    a = atom("p", n, c)
    assert parse_atom(str(a)) == a
