"""Reference stable-model semantics on plain sets of atoms.

Deliberately simple and independent of the compiled representation used by
the backends, so it can serve as their checker.
"""

from __future__ import annotations

from typing import Iterable

from ..program import Atom, Program, Rule, RuleKind, constraint, fact, normal


def reduct(p: Program, interpretation: Iterable[Atom]) -> Program:
    """Gelfond-Lifschitz reduct; positive bodies are kept.

    Choice rules contribute a fact for each of their atoms that is in the
    interpretation.  Their lower bound is not represented here.
    """
    i = frozenset(interpretation)
    out: list[Rule] = []
    for r in p.rules:
        if r.kind is RuleKind.CHOICE:
            out.extend(fact(a, r.rule_id) for a in r.choice_atoms if a in i)
        elif not i.intersection(r.body_neg):
            if r.kind is RuleKind.NORMAL:
                out.append(normal(r.head, r.body_pos, rule_id=r.rule_id))
            else:
                out.append(constraint(r.body_pos, rule_id=r.rule_id))
    rules = tuple(r.with_id(k) for k, r in enumerate(out, start=1))
    return Program(rules, {k: r.rule_id for k, r in enumerate(out, start=1)})


def least_model(p: Program) -> frozenset[Atom]:
    """Least fixpoint of one-step derivation; constraints are ignored."""
    model: set[Atom] = set()
    pending = [r for r in p.rules if r.kind is RuleKind.NORMAL]
    changed = True
    while changed:
        changed = False
        rest = []
        for r in pending:
            if r.body_neg:
                raise ValueError("least_model expects a positive program")
            if all(b in model for b in r.body_pos):
                if r.head not in model:
                    model.add(r.head)
                    changed = True
            else:
                rest.append(r)
        pending = rest
    return frozenset(model)


def violated_constraints(p: Program, interpretation: Iterable[Atom]) -> list[Rule]:
    i = frozenset(interpretation)
    bad = []
    for r in p.rules:
        if r.kind is RuleKind.CONSTRAINT:
            if i.issuperset(r.body_pos) and not i.intersection(r.body_neg):
                bad.append(r)
        elif r.kind is RuleKind.CHOICE:
            if sum(1 for a in r.choice_atoms if a in i) < r.choice_bound:
                bad.append(r)
    return bad


def is_answer_set(p: Program, interpretation: Iterable[Atom]) -> bool:
    i = frozenset(interpretation)
    if violated_constraints(p, i):
        return False
    return least_model(reduct(p, i)) == i
