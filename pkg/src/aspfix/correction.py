"""Minimal corrections of inconsistent programs via selector instrumentation.

Each removable rule ``r`` becomes ``head :- sel_r(id), body`` and each
addable rule becomes ``head :- not sel_a(k), body``.  A maximal consistent
subset ``L`` of the selector atoms then names a minimal correction: removable
rules whose selector is missing from ``L`` are removed, addable rules whose
selector is missing are added.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (AspFixError, NoAdditionCandidates, NoConsistentSubset, NoCorrection,
                     NotMaximal, SelectorCollision)
from .grounder import ground
from .maxcon import atleast_of, maxcon
from .parser import parse_atom, parse_program
from .program import (Atom, Interpretation, Program, Rule, RuleKind, Variable, choice, fact,
                      facts_of, normal)
from .solver import Backend, SolverConfig, solve
from .solver.semantics import least_model

REMOVE = "remove"
ADD = "add"


@dataclass(frozen=True)
class AdditionExpr:
    """``p(A1):t(A2)`` - add ``p(A1)`` for every derivable instance of ``t(A2)``."""

    head: Atom
    domain: Atom

    def __post_init__(self):
        missing = set(self.head.variables()) - set(self.domain.variables())
        if missing:
            names = ", ".join(sorted(v.name for v in missing))
            raise AspFixError(f"unsafe addition expression {self}: {names} not bound by {self.domain}")

    @classmethod
    def parse(cls, text: str) -> "AdditionExpr":
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == ":" and depth == 0 and text[i + 1:i + 2] != "-":
                return cls(parse_atom(text[:i]), parse_atom(text[i + 1:]))
        raise AspFixError(f"addition expression {text!r} must have the form p(A1):t(A2)")

    def expand(self, domain_atoms: Iterable[Atom]) -> list[Atom]:
        out = []
        for a in domain_atoms:
            if a.signature != self.domain.signature:
                continue
            binding: dict[Variable, object] = {}
            for pattern, value in zip(self.domain.args, a.args):
                if isinstance(pattern, Variable):
                    if binding.setdefault(pattern, value) != value:
                        break
                elif pattern != value:
                    break
            else:
                out.append(self.head.substitute(binding))
        return list(dict.fromkeys(out))

    def __str__(self):
        return f"{self.head}:{self.domain}"


@dataclass
class CorrectionSpec:
    """The user's choice of removable rules and candidate additions.

    ``removable`` holds ``"pred/arity"`` strings (every fact over that
    predicate) and/or integer rule ids.
    """

    removable: list = field(default_factory=list)
    addable_rules: list[str] = field(default_factory=list)
    addition_exprs: list[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, data: dict) -> "CorrectionSpec":
        unknown = set(data) - {"removable", "addable_rules", "addition_exprs"}
        if unknown:
            raise AspFixError(f"unknown correction spec keys: {', '.join(sorted(unknown))}")
        spec = cls(list(data.get("removable", [])), list(data.get("addable_rules", [])),
                   list(data.get("addition_exprs", [])))
        for item in spec.removable:
            if not isinstance(item, (int, str)) or isinstance(item, bool):
                raise AspFixError(f"removable entry {item!r} must be 'pred/arity' or a rule id")
        return spec

    @classmethod
    def load(cls, path) -> "CorrectionSpec":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return {"removable": list(self.removable), "addable_rules": list(self.addable_rules),
                "addition_exprs": list(self.addition_exprs)}

    def exprs(self) -> list[AdditionExpr]:
        return [AdditionExpr.parse(e) for e in self.addition_exprs]

    def addable(self) -> list[Rule]:
        rules = []
        for i, text in enumerate(self.addable_rules, start=1):
            prog = parse_program(text, filename=f"<addable {i}>")
            if len(prog.rules) != 1:
                raise AspFixError(f"addable rule {i} must be a single rule: {text!r}")
            if not prog.rules[0].is_ground():
                raise AspFixError(f"addable rule {i} must be ground: {text!r}")
            rules.append(prog.rules[0].with_id(i))
        return rules

    def resolve_removable(self, p: Program) -> list[Rule]:
        """Rules of ``p`` selected for removal, in program order."""
        ids: set[int] = set()
        for item in self.removable:
            if isinstance(item, int) or (isinstance(item, str) and item.isdigit()):
                rid = int(item)
                try:
                    p.rule(rid)
                except KeyError:
                    raise AspFixError(f"removable rule id {rid} not in program") from None
                ids.add(rid)
                continue
            pred, sep, arity = item.rpartition("/")
            if not sep or not arity.isdigit():
                raise AspFixError(f"removable entry {item!r} must be 'pred/arity' or a rule id")
            ids.update(r.rule_id for r in p.rules
                       if r.is_fact and r.head.signature == (pred, int(arity)))
        return [r for r in p.rules if r.rule_id in ids]


@dataclass
class InstrumentedProgram:
    program: Program
    selectors: tuple[Atom, ...]
    provenance: dict[Atom, tuple[Rule, str]]
    selector_names: tuple[str, str]

    def removal_selectors(self) -> list[Atom]:
        return [s for s in self.selectors if self.provenance[s][1] == REMOVE]

    def addition_selectors(self) -> list[Atom]:
        return [s for s in self.selectors if self.provenance[s][1] == ADD]


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "_"
    return name


def _gate(r: Rule, sel: Atom, polarity: str, rule_id: int) -> Rule:
    if r.kind is RuleKind.CHOICE:
        raise AspFixError(f"choice rule {r} cannot be gated by a selector")
    pos, neg = r.body_pos, r.body_neg
    if polarity == REMOVE:
        pos = (sel,) + pos
    else:
        neg = (sel,) + neg
    return Rule(r.kind, r.head, pos, neg, rule_id=rule_id)


def instrument(p: Program, removable: Iterable[Rule], addable: Sequence[Rule] = (),
               selector_names: tuple[str, str] = ("sel_r", "sel_a"),
               strict: bool = False) -> InstrumentedProgram:
    """Gate removable rules (by rule id) and append gated addable rules.

    Removal selectors are indexed by the rule id in ``p``, addition selectors
    by 1-based position in ``addable``.  Selector predicate names are made
    fresh by appending underscores unless ``strict`` is set, in which case a
    clash raises :class:`SelectorCollision`.
    """
    removable = list(removable)
    by_id = {r.rule_id: r for r in p.rules}
    for r in removable:
        if by_id.get(r.rule_id) != r:
            raise AspFixError(f"removable rule {r} (id {r.rule_id}) not found in program")
    existing = set(p.rules)
    for r in addable:
        if r in existing:
            raise AspFixError(f"addable rule {r} is already part of the program")
    taken = set(p.signature)
    for r in addable:
        taken.update(a.predicate for a in r.atoms())
    names = []
    for name in selector_names:
        fresh = _fresh(name, taken | set(names))
        if strict and fresh != name:
            raise SelectorCollision(f"selector predicate {name} already used by the program")
        names.append(fresh)
    sel_r, sel_a = names
    remove_ids = {r.rule_id for r in removable}
    provenance: dict[Atom, tuple[Rule, str]] = {}
    selectors = []
    rules = []
    for r in p.rules:
        if r.rule_id in remove_ids:
            sel = Atom(sel_r, (r.rule_id,))
            provenance[sel] = (r, REMOVE)
            selectors.append(sel)
            rules.append(_gate(r, sel, REMOVE, r.rule_id))
        else:
            rules.append(r)
    next_id = p.next_id()
    rule_prov = dict(p.provenance)
    for k, r in enumerate(addable, start=1):
        sel = Atom(sel_a, (k,))
        provenance[sel] = (r, ADD)
        selectors.append(sel)
        rules.append(_gate(r, sel, ADD, next_id))
        next_id += 1
    return InstrumentedProgram(Program(tuple(rules), rule_prov), tuple(selectors), provenance,
                               (sel_r, sel_a))


@dataclass
class Correction:
    removed: tuple[Rule, ...]
    added: tuple[Rule, ...]
    witness: Interpretation | None = None
    selectors_kept: frozenset[Atom] = frozenset()
    materialized: tuple[Rule, ...] = ()
    oracle_calls: int = 0
    algo: str = ""

    @property
    def size(self) -> int:
        return len(self.removed) + len(self.added)

    def apply(self, p: Program) -> Program:
        """``(P minus removed) plus added``."""
        removed_ids = {r.rule_id for r in self.removed}
        kept = [r for r in p.rules if r.rule_id not in removed_ids]
        return Program(tuple(kept), p.provenance).extend(self.added)

    def to_dict(self) -> dict:
        return {
            "remove": [str(r) for r in self.removed],
            "add": [str(r) for r in self.added],
            "materialized_A": [str(r) for r in self.materialized],
            "oracle_calls": self.oracle_calls,
        }


def _consistent_with(ip: InstrumentedProgram, kept: Iterable[Atom], cfg: SolverConfig) -> bool:
    return solve(ip.program + facts_of(kept, start_id=ip.program.next_id()), cfg).consistent


def extract_correction(kept: Iterable[Atom], ip: InstrumentedProgram, verify: bool = False,
                       cfg: SolverConfig = SolverConfig(backend=Backend.BRUTE)) -> Correction:
    """Rules whose selector is absent from ``kept``.

    With ``verify`` the maximality of ``kept`` is checked by trying every
    strict superset within the selectors; :class:`NotMaximal` is raised if
    ``kept`` is inconsistent or one of its supersets is consistent.
    """
    kept = frozenset(kept)
    unknown = kept - set(ip.selectors)
    if unknown:
        raise AspFixError(f"not selector atoms: {', '.join(map(str, unknown))}")
    if verify:
        if not _consistent_with(ip, kept, cfg):
            raise NotMaximal("selector set is not consistent with the instrumented program")
        rest = [s for s in ip.selectors if s not in kept]
        for k in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                if _consistent_with(ip, kept | set(extra), cfg):
                    raise NotMaximal(f"consistent strict superset adds {', '.join(map(str, extra))}")
    removed = tuple(ip.provenance[s][0] for s in ip.removal_selectors() if s not in kept)
    added = tuple(ip.provenance[s][0] for s in ip.addition_selectors() if s not in kept)
    return Correction(removed, added, selectors_kept=kept)


def possible_atoms(p: Program) -> frozenset[Atom]:
    """Over-approximation of atoms in any answer set: negation and constraints ignored."""
    rules = [normal(r.head, r.body_pos) for r in p.rules if r.kind is RuleKind.NORMAL]
    rules += [fact(a) for r in p.rules if r.kind is RuleKind.CHOICE for a in r.choice_atoms]
    return least_model(Program(tuple(r.with_id(i) for i, r in enumerate(rules, start=1))))


def addition_candidates(p: Program, exprs: Sequence[AdditionExpr]) -> list[Atom]:
    domain = sorted(possible_atoms(p), key=Atom.sort_key)
    out: dict[Atom, None] = {}
    for e in exprs:
        for a in e.expand(domain):
            out.setdefault(a)
    return list(out)


def instantiate_additions(p: Program, removable: Iterable[Rule], exprs: Sequence[AdditionExpr],
                          cfg: SolverConfig = SolverConfig()) -> tuple[list[Rule], int]:
    """Materialize addition expressions into a fixed set of facts with one solver call.

    Returns the facts and the number of oracle calls made (0 or 1).
    """
    removable = list(removable)
    ip = instrument(p, removable, ())
    candidates = addition_candidates(p, exprs)
    pool = ip.removal_selectors() + candidates
    if not pool:
        return [], 0
    prog = ip.program.extend([atleast_of(pool)])
    res = solve(prog, cfg)
    if not res.consistent:
        raise NoAdditionCandidates("no answer set even with all removals and additions allowed")
    existing = set(p.rules)
    facts = [fact(a) for a in candidates if a in res.model]
    facts = [f for f in facts if f not in existing]
    return [f.with_id(i) for i, f in enumerate(facts, start=1)], 1


def min_correct(p: Program, spec: CorrectionSpec, algo: str = "p",
                cfg: SolverConfig = SolverConfig()) -> Correction:
    """Ground, materialize additions, instrument, maximize, and read off the correction."""
    cfg = SolverConfig(backend=cfg.backend, ceiling=cfg.ceiling, seed=cfg.seed,
                       deadline=cfg.resolve_deadline())
    gp = ground(p)
    removable = spec.resolve_removable(gp)
    addable = spec.addable()
    materialized: list[Rule] = []
    calls = 0
    exprs = spec.exprs()
    if exprs:
        materialized, calls = instantiate_additions(gp, removable, exprs, cfg)
    seen = set(addable)
    for r in materialized:
        if r not in seen:
            seen.add(r)
            addable.append(r)
    addable = [r.with_id(i) for i, r in enumerate(addable, start=1)]
    ip = instrument(gp, removable, addable)
    try:
        res = maxcon(ip.program, ip.selectors, algo, cfg)
    except NoConsistentSubset as exc:
        raise NoCorrection("no correction exists within the given removable/addable rules") from exc
    corr = extract_correction(res.subset, ip)
    corr.witness = frozenset(a for a in res.witness if a.predicate not in ip.selector_names)
    corr.materialized = tuple(materialized)
    corr.oracle_calls = res.oracle_calls + calls
    corr.algo = algo
    return corr
