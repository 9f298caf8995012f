"""Seeded random ground programs for property tests and the acceptance suite."""

from __future__ import annotations

import random

from .program import Atom, Program, Rule, choice, constraint, fact, normal


def random_atoms(n: int) -> list[Atom]:
    return [Atom(f"a{i}") for i in range(n)]


def random_rule(rng: random.Random, atoms: list[Atom], choice_weight: float = 0.1,
                constraint_weight: float = 0.2) -> Rule:
    roll = rng.random()
    if roll < choice_weight:
        picked = rng.sample(atoms, rng.randint(1, min(4, len(atoms))))
        return choice(picked, bound=rng.randint(0, min(2, len(picked))))
    size = rng.choice([0, 1, 1, 2, 2, 2, 3])
    body = rng.sample(atoms, min(size, len(atoms)))
    pos, neg = [], []
    for a in body:
        (neg if rng.random() < 0.5 else pos).append(a)
    if roll < choice_weight + constraint_weight:
        if not body:
            pos = [rng.choice(atoms)]
        return constraint(pos, neg)
    head = rng.choice(atoms)
    return normal(head, pos, neg)


def random_program(seed: int, max_atoms: int = 12, max_rules: int = 25) -> Program:
    rng = random.Random(seed)
    atoms = random_atoms(rng.randint(1, max_atoms))
    rules = [random_rule(rng, atoms) for _ in range(rng.randint(1, max_rules))]
    return Program(tuple(r.with_id(i) for i, r in enumerate(rules, start=1)))


def random_maxcon_instance(seed: int, max_atoms: int = 12, max_rules: int = 20, max_targets: int = 10):
    """A random program plus an ordered target set drawn from its atoms.

    Target atoms are excluded from choice rules so that facts over them are
    meaningful additions.
    """
    rng = random.Random(seed)
    n = rng.randint(2, max_atoms)
    atoms = random_atoms(n)
    k = rng.randint(0, min(max_targets, n))
    targets = rng.sample(atoms, k)
    rules = [random_rule(rng, atoms) for _ in range(rng.randint(1, max_rules))]
    return Program(tuple(r.with_id(i) for i, r in enumerate(rules, start=1))), targets


def random_correction_instance(seed: int, max_atoms: int = 8, max_rules: int = 12, max_universe: int = 8):
    """A random program with removable rules R (subset of its rules) and
    addable rules A (fresh facts/rules), with |R| + |A| <= ``max_universe``."""
    rng = random.Random(seed)
    n = rng.randint(2, max_atoms)
    atoms = random_atoms(n)
    rules = [random_rule(rng, atoms, choice_weight=0.05, constraint_weight=0.35)
             for _ in range(rng.randint(2, max_rules))]
    rules += [fact(a) for a in rng.sample(atoms, rng.randint(0, min(3, n)))]
    rules = list(dict.fromkeys(rules))
    p = Program(tuple(r.with_id(i) for i, r in enumerate(rules, start=1)))
    non_choice = [r for r in p.rules if r.kind.value != "choice"]
    n_r = rng.randint(0, min(len(non_choice), max_universe))
    removable = rng.sample(non_choice, n_r)
    addable: list[Rule] = []
    budget = rng.randint(0, max_universe - n_r)
    tries = 0
    while len(addable) < budget and tries < 50:
        tries += 1
        if rng.random() < 0.6:
            cand = fact(rng.choice(atoms))
        else:
            cand = random_rule(rng, atoms, choice_weight=0.0)
        if cand not in p.rules and cand not in addable:
            addable.append(cand)
    addable = [r.with_id(i) for i, r in enumerate(addable, start=1)]
    return p, removable, addable
