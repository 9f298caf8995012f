from aspfix.parser import parse_program
from aspfix.program import Atom, atom, render
from aspfix.solver import is_answer_set, least_model, reduct, violated_constraints

a, b = Atom("a"), Atom("b")


def test_reduct_examples():
    p = parse_program("a :- not b.")
    assert render(reduct(p, set())) == "a.\n"
    assert render(reduct(p, {b})) == ""
    stones = parse_program("move(a) :- stone(b), not stone(c).")
    assert render(reduct(stones, {atom("stone", "c")})) == ""


def test_reduct_keeps_positive_body():
    p = parse_program("a :- b, not c.")
    assert render(reduct(p, set())) == "a :- b.\n"


def test_least_model():
    assert least_model(parse_program("a. b :- a.")) == {a, b}
    assert least_model(parse_program("a :- a.")) == frozenset()
    assert least_model(parse_program("p(1) :- q(1). q(1).")) == {atom("p", 1), atom("q", 1)}


def test_is_answer_set():
    p = parse_program("a :- not b.")
    assert is_answer_set(p, {a})
    assert not is_answer_set(p, {a, b})
    c = parse_program("0 { a }.")
    assert is_answer_set(c, {a}) and is_answer_set(c, set())


def test_choice_lower_bound():
    p = parse_program("1 { a; b }.")
    assert not is_answer_set(p, set())
    assert violated_constraints(p, set())
    assert is_answer_set(p, {a, b})


def test_constraint_violation():
    p = parse_program(":- a. a.")
    assert not is_answer_set(p, {a})
