"""Immutable program representation: terms, atoms, rules, programs.

Constants are plain ``str`` (symbols) or ``int`` values; variables are
:class:`Variable` instances.  Every value here is hashable and never mutated
after construction, so programs can be shared freely between solver runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import AspFixError


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


Constant = Union[str, int]
Term = Union[Constant, Variable]


def is_ground_term(term: Term) -> bool:
    return not isinstance(term, Variable)


def term_sort_key(term: Term):
    # ints before symbols before variables; keeps mixed tuples comparable
    if isinstance(term, bool):
        raise TypeError("bool is not a term")
    if isinstance(term, int):
        return (0, term, "")
    if isinstance(term, str):
        return (1, 0, term)
    return (2, 0, term.name)


def render_term(term: Term) -> str:
    return str(term)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> tuple[str, int]:
        return (self.predicate, len(self.args))

    def is_ground(self) -> bool:
        return all(is_ground_term(t) for t in self.args)

    def variables(self) -> list[Variable]:
        return [t for t in self.args if isinstance(t, Variable)]

    def substitute(self, binding: Mapping[Variable, Constant]) -> "Atom":
        if not self.args:
            return self
        return Atom(self.predicate, tuple(binding.get(t, t) if isinstance(t, Variable) else t
                                          for t in self.args))

    def sort_key(self):
        return (self.predicate, len(self.args), tuple(term_sort_key(t) for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(render_term(t) for t in self.args)})"


def atom(predicate: str, *args: Term) -> Atom:
    """Shorthand constructor: ``atom("stone", "b")``."""
    return Atom(predicate, tuple(args))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


class RuleKind(enum.Enum):
    NORMAL = "normal"
    CONSTRAINT = "constraint"
    CHOICE = "choice"


@dataclass(frozen=True, eq=False)
class Rule:
    """A normal rule, an integrity constraint, or a lower-bounded choice rule.

    Equality and hashing are structural and ignore ``rule_id``; body and
    choice atoms compare as sets while keeping their written order for
    rendering.
    """

    kind: RuleKind
    head: Atom | None = None
    body_pos: tuple[Atom, ...] = ()
    body_neg: tuple[Atom, ...] = ()
    choice_bound: int = 0
    choice_atoms: tuple[Atom, ...] = ()
    rule_id: int = 0

    def __post_init__(self):
        if self.kind is RuleKind.NORMAL and self.head is None:
            raise AspFixError("normal rule needs a head")
        if self.kind is not RuleKind.NORMAL and self.head is not None:
            raise AspFixError(f"{self.kind.value} rule cannot have a head")
        if self.kind is RuleKind.CHOICE:
            if self.body_pos or self.body_neg:
                raise AspFixError("choice rules have an empty body")
            if len(set(self.choice_atoms)) != len(self.choice_atoms):
                raise AspFixError("duplicate atom in choice rule")
            if not 0 <= self.choice_bound <= len(self.choice_atoms):
                raise AspFixError(
                    f"choice bound {self.choice_bound} exceeds atom count {len(self.choice_atoms)}")
        elif self.choice_atoms or self.choice_bound:
            raise AspFixError("only choice rules carry choice atoms")

    def key(self):
        return (self.kind, self.head, frozenset(self.body_pos), frozenset(self.body_neg),
                self.choice_bound, frozenset(self.choice_atoms))

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def is_fact(self) -> bool:
        return self.kind is RuleKind.NORMAL and not self.body_pos and not self.body_neg

    @property
    def body(self) -> tuple[Literal, ...]:
        return tuple(Literal(a) for a in self.body_pos) + tuple(Literal(a, True) for a in self.body_neg)

    def atoms(self) -> Iterable[Atom]:
        if self.head is not None:
            yield self.head
        yield from self.body_pos
        yield from self.body_neg
        yield from self.choice_atoms

    def is_ground(self) -> bool:
        return all(a.is_ground() for a in self.atoms())

    def variables(self) -> list[Variable]:
        seen: dict[Variable, None] = {}
        for a in self.atoms():
            for v in a.variables():
                seen.setdefault(v)
        return list(seen)

    def substitute(self, binding: Mapping[Variable, Constant], rule_id: int | None = None) -> "Rule":
        return Rule(
            self.kind,
            None if self.head is None else self.head.substitute(binding),
            tuple(a.substitute(binding) for a in self.body_pos),
            tuple(a.substitute(binding) for a in self.body_neg),
            self.choice_bound,
            tuple(a.substitute(binding) for a in self.choice_atoms),
            self.rule_id if rule_id is None else rule_id,
        )

    def with_id(self, rule_id: int) -> "Rule":
        return Rule(self.kind, self.head, self.body_pos, self.body_neg,
                    self.choice_bound, self.choice_atoms, rule_id)

    def __str__(self) -> str:
        return render_rule(self)


def normal(head: Atom, pos: Sequence[Atom] = (), neg: Sequence[Atom] = (), rule_id: int = 0) -> Rule:
    return Rule(RuleKind.NORMAL, head, tuple(pos), tuple(neg), rule_id=rule_id)


def constraint(pos: Sequence[Atom] = (), neg: Sequence[Atom] = (), rule_id: int = 0) -> Rule:
    return Rule(RuleKind.CONSTRAINT, None, tuple(pos), tuple(neg), rule_id=rule_id)


def choice(atoms: Sequence[Atom], bound: int = 0, rule_id: int = 0) -> Rule:
    return Rule(RuleKind.CHOICE, choice_bound=bound, choice_atoms=tuple(atoms), rule_id=rule_id)


def fact(a: Atom, rule_id: int = 0) -> Rule:
    return normal(a, rule_id=rule_id)


@dataclass(frozen=True)
class Program:
    """A finite sequence of rules.

    ``provenance`` maps a rule id of this program to the id of the source
    rule it was derived from (grounding, instrumentation).  Rules without an
    entry are their own source.
    """

    rules: tuple[Rule, ...] = ()
    provenance: Mapping[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ids = [r.rule_id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise AspFixError("rule ids must be unique within a program")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __add__(self, other: "Program") -> "Program":
        return self.extend(other.rules)

    @property
    def signature(self) -> dict[str, int]:
        table: dict[str, int] = {}
        for r in self.rules:
            for a in r.atoms():
                table.setdefault(a.predicate, a.arity)
        return table

    def atoms(self) -> set[Atom]:
        return {a for r in self.rules for a in r.atoms()}

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules)

    def next_id(self) -> int:
        return max((r.rule_id for r in self.rules), default=0) + 1

    def rule(self, rule_id: int) -> Rule:
        for r in self.rules:
            if r.rule_id == rule_id:
                return r
        raise KeyError(rule_id)

    def source_id(self, rule_id: int) -> int:
        return self.provenance.get(rule_id, rule_id)

    def extend(self, rules: Iterable[Rule]) -> "Program":
        """Append rules, renumbering them with fresh ids."""
        start = self.next_id()
        extra = tuple(r.with_id(start + i) for i, r in enumerate(rules))
        return Program(self.rules + extra, self.provenance)

    def structurally_equal(self, other: "Program") -> bool:
        """Rule-by-rule equality in order, ignoring rule ids."""
        return len(self.rules) == len(other.rules) and all(
            a == b for a, b in zip(self.rules, other.rules))

    def __str__(self) -> str:
        return render(self)


Interpretation = frozenset


def facts_of(atoms: Iterable[Atom], start_id: int = 1) -> Program:
    """One fact per atom, in sorted order, with sequential ids from ``start_id``."""
    rules = []
    for a in sorted(set(atoms), key=Atom.sort_key):
        if not a.is_ground():
            raise AspFixError(f"cannot build a fact from non-ground atom {a}")
        rules.append(fact(a, rule_id=start_id + len(rules)))
    return Program(tuple(rules))


def render_rule(r: Rule) -> str:
    if r.kind is RuleKind.CHOICE:
        inner = "; ".join(str(a) for a in r.choice_atoms)
        return f"{r.choice_bound} {{ {inner} }}." if inner else f"{r.choice_bound} {{ }}."
    body = ", ".join([str(a) for a in r.body_pos] + [f"not {a}" for a in r.body_neg])
    if r.kind is RuleKind.CONSTRAINT:
        return f":- {body}." if body else ":- ."
    if not body:
        return f"{r.head}."
    return f"{r.head} :- {body}."


def render(p: Program) -> str:
    """Text that parses back to a structurally equal program."""
    return "".join(render_rule(r) + "\n" for r in p.rules)


def render_atoms(atoms: Iterable[Atom]) -> list[str]:
    return [str(a) for a in sorted(atoms, key=Atom.sort_key)]
