"""Benchmark harness: run every algorithm on every instance of a directory and
summarize solved counts (with a virtual best solver column) and the
distribution of correction-size differences against the cardinality-optimal
algorithm."""

from __future__ import annotations

import csv
import io
import json
import re
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .correction import CorrectionSpec, min_correct
from .errors import AspFixError, BudgetExceeded, NoCorrection
from .maxcon import ALGORITHMS
from .parser import parse_file
from .solver import SolverConfig

DEFAULT_BUDGET_MS = 60_000
_SEED_SUFFIX = re.compile(r"_s\d+$")


@dataclass
class BenchRecord:
    instance: str
    family: str
    algo: str
    solved: bool
    status: str  # ok | no_correction | timeout | error
    elapsed_ms: float
    oracle_calls: int | None
    correction_size: int | None
    seed: int


def family_of(name: str) -> str:
    return _SEED_SUFFIX.sub("", name)


def discover(directory) -> list[tuple[str, Path, Path]]:
    """``(name, program, spec)`` for every ``name.lp`` with a ``name.spec.json`` sibling."""
    directory = Path(directory)
    out = []
    for lp in sorted(directory.glob("*.lp")):
        spec = lp.with_name(lp.stem + ".spec.json")
        if spec.exists():
            out.append((lp.stem, lp, spec))
    return out


def run_one(task: tuple) -> BenchRecord:
    name, lp, spec_path, algo, budget_ms, seed, backend = task
    started = time.monotonic()
    cfg = SolverConfig(backend=backend, seed=seed, budget_ms=budget_ms)
    status, calls, size = "ok", None, None
    try:
        corr = min_correct(parse_file(lp), CorrectionSpec.load(spec_path), algo, cfg)
        calls, size = corr.oracle_calls, corr.size
    except NoCorrection:
        status = "no_correction"
    except BudgetExceeded:
        status = "timeout"
    except AspFixError:
        status = "error"
    elapsed = (time.monotonic() - started) * 1000.0
    if status == "ok" and budget_ms is not None and elapsed > budget_ms:
        status = "timeout"
    solved = status in ("ok", "no_correction")
    return BenchRecord(name, family_of(name), algo, solved, status, round(elapsed, 1),
                       calls, size, seed)


def run_bench(directory, algos: Sequence[str] = ALGORITHMS, budget_ms: int | None = DEFAULT_BUDGET_MS,
              jobs: int = 1, seed: int = 0, backend: str = "search", progress=None) -> list[BenchRecord]:
    tasks = [(name, str(lp), str(spec), algo, budget_ms, seed, backend)
             for name, lp, spec in discover(directory) for algo in algos]
    if jobs <= 1:
        records = []
        for t in tasks:
            rec = run_one(t)
            if progress:
                progress(rec)
            records.append(rec)
        return records
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        records = list(pool.map(run_one, tasks))
    if progress:
        for rec in records:
            progress(rec)
    return records


def solved_table(records: Sequence[BenchRecord], algos: Sequence[str]) -> list[dict]:
    """Per-family solved counts per algorithm plus the virtual best solver."""
    by_family: dict[str, dict[str, dict[str, bool]]] = defaultdict(lambda: defaultdict(dict))
    for r in records:
        by_family[r.family][r.instance][r.algo] = r.solved
    rows = []
    for family in sorted(by_family):
        insts = by_family[family]
        row = {"family": family, "instances": len(insts)}
        row["solved"] = {a: sum(1 for res in insts.values() if res.get(a)) for a in algos}
        row["vbs"] = sum(1 for res in insts.values() if any(res.values()))
        rows.append(row)
    if rows:
        rows.append({"family": "total", "instances": sum(r["instances"] for r in rows),
                     "solved": {a: sum(r["solved"][a] for r in rows) for a in algos},
                     "vbs": sum(r["vbs"] for r in rows)})
    return rows


def delta_table(records: Sequence[BenchRecord], algos: Sequence[str]) -> list[dict]:
    """Distribution of correction size under each algorithm minus the size under x,
    over instances where both produced a correction."""
    optimum = {r.instance: r.correction_size for r in records
               if r.algo == "x" and r.status == "ok"}
    others = [a for a in algos if a != "x"]
    counts: dict[int, Counter] = defaultdict(Counter)
    for r in records:
        if r.algo in others and r.status == "ok" and r.instance in optimum:
            counts[r.correction_size - optimum[r.instance]][r.algo] += 1
    return [{"delta": d, "counts": {a: counts[d][a] for a in others}} for d in sorted(counts)]


def build_report(records: Sequence[BenchRecord], algos: Sequence[str], budget_ms: int | None) -> dict:
    """JSON-ready report; everything except ``timings_ms`` is deterministic."""
    plain = []
    timings = {}
    for r in records:
        d = asdict(r)
        timings[f"{r.instance}/{r.algo}"] = d.pop("elapsed_ms")
        plain.append(d)
    return {
        "algorithms": list(algos),
        "budget_ms": budget_ms,
        "records": plain,
        "solved": solved_table(records, algos),
        "delta": delta_table(records, algos),
        "timings_ms": timings,
    }


def deterministic_part(report: dict) -> str:
    stripped = {k: v for k, v in report.items() if k != "timings_ms"}
    return json.dumps(stripped, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    algos = report["algorithms"]
    out = io.StringIO()
    solved = report["solved"]
    if not solved:
        out.write("no instances\n")
        return out.getvalue()
    width = max(len(f"{r['family']} ({r['instances']})") for r in solved)
    out.write("Solved instances\n")
    out.write(f"{'family':<{width}}  " + "  ".join(f"{a:>5}" for a in algos) + "    VBS\n")
    for r in solved:
        label = f"{r['family']} ({r['instances']})"
        out.write(f"{label:<{width}}  " + "  ".join(f"{r['solved'][a]:>5}" for a in algos)
                  + f"  {r['vbs']:>5}\n")
    others = [a for a in algos if a != "x"]
    if "x" in algos and others:
        out.write("\nCorrection size minus size under x\n")
        out.write(f"{'delta':>5}  " + "  ".join(f"{a:>5}" for a in others) + "\n")
        for row in report["delta"]:
            out.write(f"{row['delta']:>5}  " + "  ".join(f"{row['counts'][a]:>5}" for a in others) + "\n")
    return out.getvalue()


def write_csv(records: Sequence[BenchRecord], path) -> None:
    fields = list(BenchRecord.__dataclass_fields__)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for r in records:
            writer.writerow(asdict(r))
