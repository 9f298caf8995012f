"""Exhaustive backend: tries every subset of the candidate atoms.

Bitmask evaluation keeps it fast enough to act as a test oracle on small
programs; it is refused above a configurable atom ceiling.
"""

from __future__ import annotations

import time
from typing import Iterator

from ..errors import BudgetExceeded, CeilingExceeded
from .compiled import CompiledProgram


class BruteForce:
    def __init__(self, cp: CompiledProgram, ceiling: int = 20, deadline: float | None = None):
        self.cp = cp
        self.cands = cp.candidates()
        if len(self.cands) > ceiling:
            raise CeilingExceeded(
                f"brute force limited to {ceiling} candidate atoms, program has {len(self.cands)}")
        self.deadline = deadline
        self.checked = 0
        bit = [1 << i for i in range(cp.num_atoms)]

        def mask(ixs):
            m = 0
            for i in ixs:
                m |= bit[i]
            return m

        self.normal = [(bit[r.head], mask(r.pos), mask(r.neg)) for r in cp.rules if r.head >= 0]
        self.constraints = [(mask(r.pos), mask(r.neg)) for r in cp.rules if r.head < 0]
        self.choices = [(bound, mask(atoms)) for bound, atoms in cp.choices]
        self.choice_union = mask(a for _, atoms in cp.choices for a in atoms)
        self.cand_bits = [bit[i] for i in self.cands]

    def _stable(self, m: int) -> bool:
        for pos, neg in self.constraints:
            if pos & m == pos and not neg & m:
                return False
        for bound, cm in self.choices:
            if bin(cm & m).count("1") < bound:
                return False
        reduct = [(h, pos) for h, pos, neg in self.normal if not neg & m]
        lm = self.choice_union & m
        changed = True
        while changed:
            changed = False
            rest = []
            for h, pos in reduct:
                if pos & lm == pos:
                    if not h & lm:
                        lm |= h
                        if not h & m:
                            return False
                        changed = True
                else:
                    rest.append((h, pos))
            reduct = rest
        return lm == m

    def models(self) -> Iterator[frozenset]:
        n = len(self.cand_bits)
        for k in range(1 << n):
            if self.deadline is not None and k & 1023 == 0 and time.monotonic() > self.deadline:
                raise BudgetExceeded("time budget exhausted during brute-force enumeration")
            m = 0
            for j in range(n):
                if k >> j & 1:
                    m |= self.cand_bits[j]
            self.checked += 1
            if self._stable(m):
                yield self.cp.decode(i for i in range(self.cp.num_atoms) if m >> i & 1)
