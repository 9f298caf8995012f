"""Conflict-driven propositional search with native at-least-k constraints.

Literals are ints: ``2*v`` is variable ``v`` positive, ``2*v + 1`` negative,
so ``lit ^ 1`` negates.  Clauses use two watched literals; cardinality
constraints keep a count of false literals and produce explicit reason
clauses when they propagate.
"""

from __future__ import annotations

import heapq
import random
import time

from ..errors import BudgetExceeded

UNDEF = -1


def luby(i: int) -> int:
    """i-th element (0-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


class Cdcl:
    def __init__(self, seed: int = 0, deadline: float | None = None, restart_unit: int = 64):
        self.rng = random.Random(seed)
        self.deadline = deadline
        self.restart_unit = restart_unit
        self.nvars = 0
        self.val: list[int] = [UNDEF, UNDEF]
        self.level: list[int] = [0]
        self.reason: list = [None]
        self.phase: list[int] = [1]
        self.activity: list[float] = [0.0]
        self.watches: list[list] = [[], []]
        self.bins: list[list[int]] = [[], []]
        self.card_occ: list[list[int]] = [[], []]
        self.cards: list[tuple[list[int], int]] = []
        self.card_false: list[int] = []
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.ok = True
        self.decisions = 0
        self.conflicts = 0
        self.restarts = 0
        self._seen: list[int] = [0]

    # ---------------------------------------------------------------- setup
    def new_var(self) -> int:
        self.nvars += 1
        v = self.nvars
        self.val += [UNDEF, UNDEF]
        self.level.append(0)
        self.reason.append(None)
        self.phase.append(1)  # prefer false: answer sets tend to be small
        self.activity.append(self.rng.random() * 1e-6)
        self.watches += [[], []]
        self.bins += [[], []]
        self.card_occ += [[], []]
        self._seen.append(0)
        heapq.heappush(self.heap, (-self.activity[v], v))
        return v

    def add_clause(self, lits) -> bool:
        """Add a clause at decision level 0.  Returns False once the formula is unsat."""
        if not self.ok:
            return False
        assert not self.trail_lim
        clause = []
        for lit in dict.fromkeys(lits):
            if lit ^ 1 in clause:
                return True
            v = self.val[lit]
            if v == 1:
                return True
            if v == 0:
                continue
            clause.append(lit)
        if not clause:
            self.ok = False
            return False
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            self.ok = self.propagate() is None
            return self.ok
        self.clauses.append(clause)
        self._attach(clause)
        return True

    def _attach(self, clause: list[int]) -> None:
        if len(clause) == 2:
            a, b = clause
            self.bins[a].append(b)
            self.bins[b].append(a)
        else:
            self.watches[clause[0]].append(clause)
            self.watches[clause[1]].append(clause)

    def add_atleast(self, lits, k: int) -> bool:
        """At least ``k`` of ``lits`` must be true (level 0 only)."""
        if not self.ok:
            return False
        lits = list(dict.fromkeys(lits))
        if k <= 0:
            return True
        if k == 1:
            return self.add_clause(lits)
        if k > len(lits):
            self.ok = False
            return False
        if k == len(lits):
            return all(self.add_clause([lit]) for lit in lits)
        ci = len(self.cards)
        self.cards.append((lits, k))
        self.card_false.append(sum(1 for lit in lits if self.val[lit] == 0))
        for lit in lits:
            self.card_occ[lit].append(ci)
        if self.card_false[ci] >= len(lits) - k:
            # already tight at level 0: re-check through the regular propagation path
            self.ok = self._card_check(ci) is None and self.propagate() is None
        return self.ok

    # ---------------------------------------------------------- assignment
    def value(self, lit: int) -> int:
        return self.val[lit]

    def decision_level(self) -> int:
        return len(self.trail_lim)

    def _enqueue(self, lit: int, reason) -> None:
        val = self.val
        val[lit] = 1
        val[lit ^ 1] = 0
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        card_false = self.card_false
        for ci in self.card_occ[lit ^ 1]:
            card_false[ci] += 1

    def _card_check(self, ci: int):
        lits, k = self.cards[ci]
        slack = len(lits) - k
        nfalse = self.card_false[ci]
        if nfalse < slack:
            return None
        val = self.val
        false_lits = [lit for lit in lits if val[lit] == 0]
        if nfalse > slack:
            return false_lits
        for lit in lits:
            if val[lit] == UNDEF:
                self._enqueue(lit, [lit] + false_lits)
        return None

    def propagate(self):
        """Unit propagation; returns a conflicting clause or None."""
        val = self.val
        watches = self.watches
        trail = self.trail
        card_occ = self.card_occ
        bins = self.bins
        enqueue = self._enqueue
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            for q in bins[false_lit]:
                v = val[q]
                if v == 1:
                    continue
                if v == 0:
                    self.qhead = len(trail)
                    return [q, false_lit]
                enqueue(q, [q, false_lit])
            ws = watches[false_lit]
            watches[false_lit] = kept = []
            n = len(ws)
            i = 0
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if val[first] == 1:
                    kept.append(c)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if val[lit] != 0:
                        c[1], c[k] = lit, false_lit
                        watches[lit].append(c)
                        break
                else:
                    kept.append(c)
                    if val[first] == 0:
                        kept.extend(ws[i:])
                        self.qhead = len(trail)
                        return c
                    enqueue(first, c)
            for ci in card_occ[false_lit]:
                confl = self._card_check(ci)
                if confl is not None:
                    self.qhead = len(trail)
                    return confl
        return None

    def backtrack(self, target: int) -> None:
        if len(self.trail_lim) <= target:
            return
        val = self.val
        card_occ = self.card_occ
        card_false = self.card_false
        heap = self.heap
        activity = self.activity
        start = self.trail_lim[target]
        for idx in range(len(self.trail) - 1, start - 1, -1):
            lit = self.trail[idx]
            v = lit >> 1
            val[lit] = UNDEF
            val[lit ^ 1] = UNDEF
            self.reason[v] = None
            self.phase[v] = lit & 1
            for ci in card_occ[lit ^ 1]:
                card_false[ci] -= 1
            heapq.heappush(heap, (-activity[v], v))
        del self.trail[start:]
        del self.trail_lim[target:]
        self.qhead = len(self.trail)

    # ------------------------------------------------------------ learning
    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.nvars + 1)
                         if self.val[2 * u] == UNDEF]
            heapq.heapify(self.heap)
        elif self.val[2 * v] == UNDEF:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl):
        seen = self._seen
        level = self.level
        cur = len(self.trail_lim)
        learnt = [0]
        touched = []
        counter = 0
        p = -1
        idx = len(self.trail) - 1
        clause = confl
        while True:
            for q in clause:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    touched.append(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            clause = self.reason[p >> 1]
            seen[p >> 1] = 0
            counter -= 1
            if counter <= 0:
                break
        learnt[0] = p ^ 1
        # drop literals implied by the rest of the clause (local minimisation)
        in_clause = {q >> 1 for q in learnt}
        out = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q >> 1]
            if r is None or any((x >> 1) not in in_clause and level[x >> 1] > 0
                                for x in r if x != q ^ 1):
                out.append(q)
        for v in touched:
            seen[v] = 0
        if len(out) == 1:
            return out, 0
        best = max(range(1, len(out)), key=lambda j: level[out[j] >> 1])
        out[1], out[best] = out[best], out[1]
        return out, level[out[1] >> 1]

    def _pick_branch(self) -> int:
        heap = self.heap
        val = self.val
        activity = self.activity
        while heap:
            neg_act, v = heapq.heappop(heap)
            if val[2 * v] == UNDEF and -neg_act == activity[v]:
                return v
        for v in range(1, self.nvars + 1):
            if val[2 * v] == UNDEF:
                return v
        return 0

    def _check_budget(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted during search")

    def search(self) -> bool:
        """Run until every variable is assigned (True) or unsat is proven (False).

        The assignment is left in place after True so the caller can inspect it
        and add clauses through :meth:`add_clauses_in_search`.
        """
        if not self.ok:
            return False
        restart_limit = self.restart_unit * luby(self.restarts)
        since_restart = 0
        while True:
            confl = self.propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, bj = self._analyze(confl)
                self.backtrack(bj)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.learnts.append(learnt)
                    self._attach(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= 0.95
                if self.conflicts & 63 == 0:
                    self._check_budget()
                if since_restart >= restart_limit:
                    self.restarts += 1
                    since_restart = 0
                    restart_limit = self.restart_unit * luby(self.restarts)
                    self.backtrack(0)
            else:
                v = self._pick_branch()
                if v == 0:
                    return True
                self.decisions += 1
                if self.decisions & 1023 == 0:
                    self._check_budget()
                self.trail_lim.append(len(self.trail))
                self._enqueue(2 * v + self.phase[v], None)

    def add_clauses_in_search(self, clauses) -> bool:
        """Add clauses that are all false under the current full assignment.

        Backtracks just far enough to make every new clause non-false, then
        lets the next :meth:`search` call continue.  Returns False if unsat.
        """
        if not self.ok:
            return False
        prepared = []
        for c in clauses:
            c = list(dict.fromkeys(c))
            if any(lit ^ 1 in c for lit in c):
                continue
            prepared.append(c)
        if not prepared:
            return True
        level = self.level
        tops = []
        for c in prepared:
            assert all(self.val[lit] == 0 for lit in c), "clause must be false"
            tops.append(max((level[lit >> 1] for lit in c), default=0))
        if min(tops) == 0:
            self.ok = False
            return False
        units = [c for c in prepared if len(c) == 1]
        self.backtrack(0 if units else min(tops) - 1)
        for c in units:
            if self.val[c[0]] == 0:
                self.ok = False
                return False
            if self.val[c[0]] == UNDEF:
                self._enqueue(c[0], None)
        for c in prepared:
            if len(c) == 1:
                continue
            c.sort(key=lambda lit: (self.val[lit] == 0, -level[lit >> 1]))
            self.learnts.append(c)
            self._attach(c)
        for c in prepared:
            if len(c) > 1 and self.val[c[0]] == UNDEF and self.val[c[1]] == 0:
                self._enqueue(c[0], c)
        if not self.trail_lim and self.propagate() is not None:
            self.ok = False
            return False
        return True
