"""Integer-indexed view of a ground program, shared by both backends."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SolverError
from ..program import Atom, Program, RuleKind


@dataclass
class CompiledRule:
    head: int  # -1 for constraints
    pos: tuple[int, ...]
    neg: tuple[int, ...]


class CompiledProgram:
    def __init__(self, p: Program):
        if not p.is_ground():
            raise SolverError("solver input must be ground")
        self.atoms: list[Atom] = []
        self.index: dict[Atom, int] = {}
        self.rules: list[CompiledRule] = []
        self.choices: list[tuple[int, tuple[int, ...]]] = []
        for r in p.rules:
            if r.kind is RuleKind.CHOICE:
                self.choices.append((r.choice_bound, tuple(self._idx(a) for a in r.choice_atoms)))
            else:
                head = -1 if r.head is None else self._idx(r.head)
                pos = tuple(sorted({self._idx(a) for a in r.body_pos}))
                neg = tuple(sorted({self._idx(a) for a in r.body_neg}))
                self.rules.append(CompiledRule(head, pos, neg))

    def _idx(self, a: Atom) -> int:
        i = self.index.get(a)
        if i is None:
            i = self.index[a] = len(self.atoms)
            self.atoms.append(a)
        return i

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    def candidates(self) -> list[int]:
        """Atoms that can appear in some answer set: rule heads and choice atoms."""
        seen = {r.head for r in self.rules if r.head >= 0}
        for _, atoms in self.choices:
            seen.update(atoms)
        return sorted(seen)

    def decode(self, indices) -> frozenset[Atom]:
        return frozenset(self.atoms[i] for i in indices)
