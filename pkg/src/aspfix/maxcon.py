"""Maximal consistent subsets of a target atom set.

Four interchangeable algorithms share one oracle wrapper that counts solver
calls.  All of them start with a feasibility call on ``P + choice(S)``: if
that program has no answer set, no subset of ``S`` is consistent with ``P``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import AspFixError, BudgetExceeded, NoConsistentSubset
from .program import Atom, Interpretation, Program, Rule, choice, fact
from .solver import SolveResult, SolverConfig, solve

ALGORITHMS = ("a", "u", "p", "x")


def choice_of(atoms: Iterable[Atom]) -> Rule:
    return choice(_ordered(atoms), bound=0)


def atleast_of(atoms: Iterable[Atom], k: int = 1) -> Rule:
    atoms = _ordered(atoms)
    if k > len(atoms):
        raise AspFixError(f"at-least-{k} over {len(atoms)} atoms is unsatisfiable")
    return choice(atoms, bound=k)


def _ordered(atoms: Iterable[Atom]) -> list[Atom]:
    if isinstance(atoms, (set, frozenset)):
        return sorted(atoms, key=Atom.sort_key)
    return list(dict.fromkeys(atoms))


def target_set(atoms: Iterable[Atom], shuffle_seed: int | None = None) -> tuple[Atom, ...]:
    """Validate and freeze a target sequence; optionally permute it."""
    out = list(atoms)
    if len(set(out)) != len(out):
        raise AspFixError("target set contains duplicates")
    for a in out:
        if not a.is_ground():
            raise AspFixError(f"target atom {a} is not ground")
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(out)
    return tuple(out)


@dataclass
class MaxConResult:
    subset: frozenset[Atom]
    oracle_calls: int
    witness: Interpretation
    algo: str = ""
    trace: list[frozenset[Atom]] = field(default_factory=list)

    def ordered(self) -> list[Atom]:
        return sorted(self.subset, key=Atom.sort_key)


class Oracle:
    """Counts calls to ``solve`` on ``P`` plus extra rules, under one deadline."""

    def __init__(self, p: Program, cfg: SolverConfig = SolverConfig()):
        self.p = p
        self.deadline = cfg.resolve_deadline()
        self.cfg = SolverConfig(backend=cfg.backend, ceiling=cfg.ceiling, seed=cfg.seed,
                                deadline=self.deadline)
        self.calls = 0

    def __call__(self, facts: Iterable[Atom] = (), extra: Sequence[Rule] = ()) -> SolveResult:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted before oracle call")
        self.calls += 1
        rules = [fact(a) for a in _ordered(facts)] + list(extra)
        return solve(self.p.extend(rules), self.cfg)


def can_extend(p: Program, s: Sequence[Atom], l: Iterable[Atom],
               cfg: SolverConfig = SolverConfig()) -> frozenset[Atom] | None:
    """A consistent L' with l <= L' <= s, or None if there is none."""
    l = frozenset(l)
    res = Oracle(p, cfg)(l, [choice_of([a for a in s if a not in l])])
    return res.model & frozenset(s) if res.consistent else None


def is_maximal(p: Program, s: Sequence[Atom], l: Iterable[Atom],
               cfg: SolverConfig = SolverConfig()) -> bool:
    """True iff no consistent strict superset of ``l`` within ``s`` exists.

    Assumes ``P + facts(l)`` is consistent.
    """
    l = frozenset(l)
    rest = [a for a in s if a not in l]
    if not rest:
        return True
    return not Oracle(p, cfg)(l, [atleast_of(rest)]).consistent


def _feasibility(oracle: Oracle, s: Sequence[Atom]):
    res = oracle((), [choice_of(s)])
    if not res.consistent:
        raise NoConsistentSubset("no subset of the target set is consistent with the program")
    return res.model & frozenset(s), res.model


def algo_atleast(p: Program, s: Sequence[Atom], cfg: SolverConfig = SolverConfig()) -> MaxConResult:
    """Grow L until the program forcing at least one more target atom is inconsistent."""
    oracle = Oracle(p, cfg)
    full = frozenset(s)
    l, witness = _feasibility(oracle, s)
    trace = [l]
    while True:
        rest = [a for a in s if a not in l]
        if not rest:
            break
        res = oracle(l, [atleast_of(rest)])
        if not res.consistent:
            break
        l, witness = res.model & full, res.model
        trace.append(l)
    return MaxConResult(l, oracle.calls, witness, "a", trace)


def algo_unit(p: Program, s: Sequence[Atom], cfg: SolverConfig = SolverConfig()) -> MaxConResult:
    """Try the remaining target atoms one at a time, in order."""
    oracle = Oracle(p, cfg)
    full = frozenset(s)
    l, witness = _feasibility(oracle, s)
    trace = [l]
    rest = [a for a in s if a not in l]
    while rest:
        picked = rest.pop(0)
        res = oracle(l | {picked}, [choice_of(rest)])
        if res.consistent:
            l, witness = res.model & full, res.model
            trace.append(l)
            rest = [a for a in rest if a not in l]
    return MaxConResult(l, oracle.calls, witness, "u", trace)


def algo_progression(p: Program, s: Sequence[Atom], cfg: SolverConfig = SolverConfig()) -> MaxConResult:
    """Add target atoms in chunks whose size doubles on success and resets on failure."""
    oracle = Oracle(p, cfg)
    full = frozenset(s)
    l, witness = _feasibility(oracle, s)
    trace = [l]
    rest = [a for a in s if a not in l]
    k = 1
    while rest:
        chunk, rest = rest[:k], rest[k:]
        res = oracle(l | frozenset(chunk), [choice_of(rest)])
        if res.consistent:
            k *= 2
            l, witness = res.model & full, res.model
            trace.append(l)
            rest = [a for a in rest if a not in l]
        else:
            if k > 1:
                rest = chunk + rest
            k = 1
    return MaxConResult(l, oracle.calls, witness, "p", trace)


def algo_maxcard(p: Program, s: Sequence[Atom], cfg: SolverConfig = SolverConfig()) -> MaxConResult:
    """Maximum-cardinality consistent subset by raising a lower bound on |S ∩ model|."""
    oracle = Oracle(p, cfg)
    full = frozenset(s)
    l, witness = _feasibility(oracle, s)
    trace = [l]
    while len(l) < len(s):
        res = oracle((), [atleast_of(s, len(l) + 1)])
        if not res.consistent:
            break
        l, witness = res.model & full, res.model
        trace.append(l)
    return MaxConResult(l, oracle.calls, witness, "x", trace)


_BY_NAME: dict[str, Callable[..., MaxConResult]] = {
    "a": algo_atleast,
    "u": algo_unit,
    "p": algo_progression,
    "x": algo_maxcard,
}


def maxcon(p: Program, s: Sequence[Atom], algo: str = "p", cfg: SolverConfig = SolverConfig()) -> MaxConResult:
    try:
        fn = _BY_NAME[algo]
    except KeyError:
        raise AspFixError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}") from None
    return fn(p, target_set(s), cfg)


def call_bound(algo: str, n_targets: int) -> int | None:
    """Upper bound on oracle calls for a target set of the given size (None for x)."""
    return {"a": n_targets + 2, "u": n_targets + 1, "p": 3 * n_targets + 1}.get(algo)
