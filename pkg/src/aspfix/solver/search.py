"""Completion-based search backend with lazy unfounded-set checking."""

from __future__ import annotations

import graphlib
from typing import Iterator, TextIO

from .cdcl import Cdcl
from .compiled import CompiledProgram


class SearchBackend:
    """Clark completion solved by :class:`Cdcl`; candidate models are checked
    for unfounded sets and refuted with loop nogoods when not stable."""

    def __init__(self, cp: CompiledProgram, seed: int = 0, deadline: float | None = None):
        self.cp = cp
        self.sat = Cdcl(seed=seed, deadline=deadline)
        self.loop_nogoods: list[list[int]] = []
        self.models_found = 0
        n = cp.num_atoms
        for _ in range(n):
            self.sat.new_var()
        self._bodies: dict[tuple, int] = {}
        self._rule_body: list[int] = []
        support: list[list[int]] = [[] for _ in range(n)]
        is_fact = [False] * n
        chosen = [False] * n
        for _, atoms in cp.choices:
            for a in atoms:
                chosen[a] = True
        for r in cp.rules:
            if r.head >= 0 and not r.pos and not r.neg:
                is_fact[r.head] = True
        self.clauses_in: list[list[int]] = []
        for r in cp.rules:
            if r.head < 0:
                self._clause([self._atom_lit(a) ^ 1 for a in r.pos] + [self._atom_lit(a) for a in r.neg])
                self._rule_body.append(-1)
                continue
            if is_fact[r.head]:
                self._rule_body.append(-1)
                if not r.pos and not r.neg:
                    self._clause([self._atom_lit(r.head)])
                continue
            b = self._body_lit(r.pos, r.neg)
            self._rule_body.append(b)
            support[r.head].append(b)
            self._clause([b ^ 1, self._atom_lit(r.head)])
        for a in range(n):
            if not is_fact[a] and not chosen[a]:
                self._clause([self._atom_lit(a) ^ 1] + support[a])
        self.cards_in: list[tuple[list[int], int]] = []
        for bound, atoms in cp.choices:
            if bound > 0:
                lits = [self._atom_lit(a) for a in atoms]
                self.cards_in.append((lits, bound))
                self.sat.add_atleast(lits, bound)
        self.tight = self._is_tight()

    @staticmethod
    def _atom_lit(a: int) -> int:
        return 2 * (a + 1)

    def _clause(self, lits: list[int]) -> None:
        self.clauses_in.append(lits)
        self.sat.add_clause(lits)

    def _body_lit(self, pos, neg) -> int:
        lits = [self._atom_lit(a) for a in pos] + [self._atom_lit(a) ^ 1 for a in neg]
        if len(lits) == 1:
            return lits[0]
        key = (pos, neg)
        b = self._bodies.get(key)
        if b is None:
            b = 2 * self.sat.new_var()
            self._bodies[key] = b
            for lit in lits:
                self._clause([b ^ 1, lit])
            self._clause([b] + [lit ^ 1 for lit in lits])
        return b

    def _is_tight(self) -> bool:
        graph = graphlib.TopologicalSorter()
        for r in self.cp.rules:
            if r.head >= 0:
                graph.add(r.head, *r.pos)
        try:
            graph.prepare()
        except graphlib.CycleError:
            return False
        return True

    def _current_model(self) -> list[int]:
        val = self.sat.val
        return [a for a in range(self.cp.num_atoms) if val[self._atom_lit(a)] == 1]

    def _unfounded(self, model: list[int]) -> set[int]:
        """Atoms of the candidate not derivable from its reduct."""
        cp = self.cp
        true = set(model)
        derived = set()
        for _, atoms in cp.choices:
            derived.update(a for a in atoms if a in true)
        waiting: dict[int, list[int]] = {}
        missing = []
        queue = list(derived)
        for ri, r in enumerate(cp.rules):
            missing.append(len(r.pos))
            if r.head < 0 or any(a in true for a in r.neg):
                continue
            if not r.pos:
                if r.head not in derived:
                    derived.add(r.head)
                    queue.append(r.head)
                continue
            for a in r.pos:
                waiting.setdefault(a, []).append(ri)
        while queue:
            a = queue.pop()
            for ri in waiting.get(a, ()):
                missing[ri] -= 1
                if missing[ri] == 0:
                    h = cp.rules[ri].head
                    if h not in derived:
                        derived.add(h)
                        queue.append(h)
        return true - derived

    def _loop_nogoods(self, unfounded: set[int]) -> list[list[int]]:
        external = []
        for ri, r in enumerate(self.cp.rules):
            if r.head in unfounded and not unfounded.intersection(r.pos):
                external.append(self._rule_body[ri])
        external = list(dict.fromkeys(external))
        return [[self._atom_lit(a) ^ 1] + external for a in sorted(unfounded)]

    def _next_candidate(self) -> list[int] | None:
        while True:
            if not self.sat.search():
                return None
            model = self._current_model()
            if self.tight:
                return model
            unfounded = self._unfounded(model)
            if not unfounded:
                return model
            nogoods = self._loop_nogoods(unfounded)
            self.loop_nogoods.extend(nogoods)
            if not self.sat.add_clauses_in_search(nogoods):
                return None

    def models(self) -> Iterator[frozenset]:
        while True:
            model = self._next_candidate()
            if model is None:
                return
            self.models_found += 1
            yield self.cp.decode(model)
            val = self.sat.val
            block = [self._atom_lit(a) ^ (val[self._atom_lit(a)] == 1)
                     for a in range(self.cp.num_atoms)]
            if not block or not self.sat.add_clauses_in_search([block]):
                return

    def stats(self) -> dict:
        return {"decisions": self.sat.decisions, "conflicts": self.sat.conflicts,
                "restarts": self.sat.restarts, "loop_nogoods": len(self.loop_nogoods)}

    def dump(self, out: TextIO) -> None:
        """DIMACS-like dump of the completion, cardinality constraints and loop nogoods."""

        def dimacs(lit: int) -> str:
            return str(-(lit >> 1) if lit & 1 else lit >> 1)

        out.write(f"p cnf {self.sat.nvars} {len(self.clauses_in)}\n")
        for a, atom in enumerate(self.cp.atoms):
            out.write(f"c atom {a + 1} {atom}\n")
        for c in self.clauses_in:
            out.write(" ".join(dimacs(lit) for lit in c) + " 0\n")
        for lits, k in self.cards_in:
            out.write(f"c atleast {k} " + " ".join(dimacs(lit) for lit in lits) + " 0\n")
        for c in self.loop_nogoods:
            out.write("c loop " + " ".join(dimacs(lit) for lit in c) + " 0\n")
