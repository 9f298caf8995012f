"""Consistency checking and answer-set computation for ground programs."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import TextIO

from ..errors import BudgetExceeded, SolverError
from ..program import Interpretation, Program
from .brute import BruteForce
from .compiled import CompiledProgram
from .search import SearchBackend
from .semantics import is_answer_set, least_model, reduct, violated_constraints

__all__ = [
    "Backend", "SolverConfig", "SolveResult", "solve", "enumerate_models",
    "is_answer_set", "least_model", "reduct", "violated_constraints",
]


class Backend(str, enum.Enum):
    BRUTE = "brute"
    SEARCH = "search"


@dataclass(frozen=True)
class SolverConfig:
    backend: Backend = Backend.SEARCH
    ceiling: int = 20
    seed: int = 0
    budget_ms: int | None = None
    deadline: float | None = None  # absolute time.monotonic() value; overrides budget_ms

    def __post_init__(self):
        if self.ceiling < 1:
            raise ValueError("ceiling must be >= 1")
        object.__setattr__(self, "backend", Backend(self.backend))

    def resolve_deadline(self) -> float | None:
        if self.deadline is not None:
            return self.deadline
        if self.budget_ms is None:
            return None
        return time.monotonic() + self.budget_ms / 1000.0


@dataclass
class SolveResult:
    consistent: bool
    model: Interpretation | None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.consistent != (self.model is not None):
            raise SolverError("model must be present exactly when consistent")


def _backend(p: Program, cfg: SolverConfig):
    cp = CompiledProgram(p)
    deadline = cfg.resolve_deadline()
    if cfg.backend is Backend.BRUTE:
        return BruteForce(cp, ceiling=cfg.ceiling, deadline=deadline)
    return SearchBackend(cp, seed=cfg.seed, deadline=deadline)


def _stats(backend, started: float) -> dict:
    stats = backend.stats() if isinstance(backend, SearchBackend) else {"checked": backend.checked}
    stats["elapsed_ms"] = round((time.monotonic() - started) * 1000.0, 3)
    return stats


def solve(p: Program, cfg: SolverConfig = SolverConfig(), dump: TextIO | None = None) -> SolveResult:
    """Decide consistency of ground ``p``; return one answer set if there is one.

    An inconsistent verdict is exact.  Running out of budget raises
    :class:`~aspfix.errors.BudgetExceeded` instead.
    """
    started = time.monotonic()
    deadline = cfg.resolve_deadline()
    if deadline is not None and started > deadline:
        raise BudgetExceeded("time budget exhausted before solving")
    backend = _backend(p, cfg)
    model = next(iter(backend.models()), None)
    if dump is not None:
        # the completion is written even when the brute-force backend decided
        completion = backend if isinstance(backend, SearchBackend) else SearchBackend(CompiledProgram(p))
        completion.dump(dump)
    return SolveResult(model is not None, model, _stats(backend, started))


def enumerate_models(p: Program, limit: int | None = None,
                     cfg: SolverConfig = SolverConfig()) -> list[Interpretation]:
    """Up to ``limit`` distinct answer sets (all of them when ``limit`` is None)."""
    backend = _backend(p, cfg)
    out = []
    if limit is not None and limit <= 0:
        return out
    for m in backend.models():
        out.append(m)
        if limit is not None and len(out) >= limit:
            break
    return out
