"""Herbrand universe, safety checking and naive (purely syntactic) grounding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GroundingError, SafetyError
from .program import Constant, Program, RuleKind, Variable, term_sort_key

DEFAULT_MAX_GROUND_RULES = 2_000_000


@dataclass(frozen=True)
class Violation:
    rule_id: int
    variables: tuple[str, ...]
    message: str

    def __str__(self):
        return f"rule {self.rule_id}: {self.message}"


def herbrand_universe(p: Program) -> set[Constant]:
    return {t for r in p.rules for a in r.atoms() for t in a.args if not isinstance(t, Variable)}


def check_safety(p: Program) -> list[Violation]:
    """Every variable must occur in the positive body; choice rules must be ground.

    Returns an empty list when the program is safe.
    """
    out = []
    for r in p.rules:
        if r.kind is RuleKind.CHOICE:
            if not r.is_ground():
                names = tuple(v.name for v in r.variables())
                out.append(Violation(r.rule_id, names, f"choice rule must be ground ({', '.join(names)})"))
            continue
        bound = {v for a in r.body_pos for v in a.variables()}
        unsafe = tuple(v.name for v in r.variables() if v not in bound)
        if unsafe:
            out.append(Violation(r.rule_id, unsafe, f"unsafe variables {', '.join(unsafe)}"))
    return out


def ground(p: Program, max_rules: int = DEFAULT_MAX_GROUND_RULES) -> Program:
    """Substitute every variable by every constant of the Herbrand universe.

    Ground rules keep their id.  Instances of a non-ground rule get fresh ids
    (numbered after the largest source id) and ``provenance`` maps each back
    to its source rule.  No simplification is performed.
    """
    violations = check_safety(p)
    if violations:
        raise SafetyError(violations)
    if p.is_ground():
        return p
    universe = sorted(herbrand_universe(p), key=term_sort_key)
    total = sum(1 if r.is_ground() else len(universe) ** len(r.variables()) for r in p.rules)
    if total > max_rules:
        raise GroundingError(f"grounding would produce {total} rules (limit {max_rules})")
    next_id = p.next_id()
    rules = []
    provenance = dict(p.provenance)
    for r in p.rules:
        variables = r.variables()
        if not variables:
            rules.append(r)
            continue
        for values in itertools.product(universe, repeat=len(variables)):
            rules.append(r.substitute(dict(zip(variables, values)), rule_id=next_id))
            provenance[next_id] = p.source_id(r.rule_id)
            next_id += 1
    return Program(tuple(rules), provenance)
