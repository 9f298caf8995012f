"""``aspfix`` command line.

Exit codes: ``solve`` 10 consistent, 20 inconsistent; ``maxcon`` and
``correct`` 0 on success, 30 when no consistent subset or correction exists.
Any other error exits 1 with a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import DEFAULT_BUDGET_MS, build_report, deterministic_part, render_text, run_bench, write_csv
from .correction import CorrectionSpec, min_correct
from .errors import AspFixError, NoConsistentSubset, NoCorrection
from .generators import gen_graceful, gen_patterns, graceful_name, patterns_name, write_instance
from .grounder import ground
from .maxcon import ALGORITHMS, maxcon, target_set
from .parser import parse_atoms, parse_file
from .program import Atom, render_atoms
from .solver import SolverConfig, enumerate_models, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_NONE = 30


def _config(args) -> SolverConfig:
    return SolverConfig(backend=args.oracle, seed=args.seed, budget_ms=args.budget_ms)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _shuffle_seed(args) -> int | None:
    return args.seed if args.shuffle else None


def cmd_solve(args) -> int:
    gp = ground(parse_file(args.file))
    cfg = _config(args)
    if args.dump_completion:
        with open(args.dump_completion, "w", encoding="utf-8") as fh:
            res = solve(gp, cfg, dump=fh)
    else:
        res = solve(gp, cfg)
    models = [res.model] if res.consistent else []
    if res.consistent and args.models != 1:
        models = enumerate_models(gp, None if args.models == 0 else args.models, cfg)
    status = "SAT" if res.consistent else "UNSAT"
    payload = {"status": status, "models": [render_atoms(m) for m in models], "stats": res.stats}
    lines = [status]
    for i, m in enumerate(models, start=1):
        lines.append(f"Answer {i}: {' '.join(render_atoms(m))}")
    lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in res.stats.items()))
    _emit(args, payload, "\n".join(lines))
    return EXIT_SAT if res.consistent else EXIT_UNSAT


def _targets(args, gp) -> list[Atom]:
    if args.target_file:
        return parse_atoms(Path(args.target_file).read_text(encoding="utf-8"))
    pred, sep, arity = args.target_pred.rpartition("/")
    if not sep or not arity.isdigit():
        raise AspFixError(f"--target-pred expects pred/arity, got {args.target_pred!r}")
    sig = (pred, int(arity))
    return sorted((a for a in gp.atoms() if a.signature == sig), key=Atom.sort_key)


def cmd_maxcon(args) -> int:
    gp = ground(parse_file(args.file))
    s = target_set(_targets(args, gp), _shuffle_seed(args))
    try:
        res = maxcon(gp, s, args.algo, _config(args))
    except NoConsistentSubset as exc:
        print(f"no consistent subset: {exc}", file=sys.stderr)
        return EXIT_NONE
    payload = {"L": render_atoms(res.subset), "witness": render_atoms(res.witness),
               "oracle_calls": res.oracle_calls, "algo": res.algo}
    text = (f"L = {{{', '.join(payload['L'])}}}\n"
            f"witness: {' '.join(payload['witness'])}\n"
            f"oracle calls: {res.oracle_calls} (algorithm {res.algo})")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_correct(args) -> int:
    p = parse_file(args.file)
    spec = CorrectionSpec.load(args.spec)
    try:
        corr = min_correct(p, spec, args.algo, _config(args))
    except NoCorrection as exc:
        print(f"no correction: {exc}", file=sys.stderr)
        return EXIT_NONE
    payload = corr.to_dict()
    lines = [f"remove: {r}" for r in payload["remove"]] + [f"add: {r}" for r in payload["add"]]
    if not lines:
        lines.append("program is consistent; empty correction")
    if payload["materialized_A"]:
        lines.append(f"materialized additions: {' '.join(payload['materialized_A'])}")
    lines.append(f"oracle calls: {corr.oracle_calls} (algorithm {args.algo})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _generate(args, make, name_of) -> int:
    written = []
    for seed in range(args.seed, args.seed + args.count):
        text, spec = make(seed)
        lp, _ = write_instance(args.out, name_of(seed), text, spec)
        written.append(str(lp))
    _emit(args, {"instances": written}, "\n".join(written))
    return EXIT_OK


def cmd_gen_graceful(args) -> int:
    return _generate(args, lambda s: gen_graceful(args.vertices, args.edges, s),
                     lambda s: graceful_name(args.vertices, args.edges, s))


def cmd_gen_patterns(args) -> int:
    return _generate(args, lambda s: gen_patterns(args.text_len, args.pattern_len, s, args.min_len),
                     lambda s: patterns_name(args.text_len, args.pattern_len, s))


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise AspFixError(f"unknown algorithm(s): {', '.join(unknown)}")
    progress = None
    if args.verbose:
        def progress(r):
            print(f"{r.instance} {r.algo}: {r.status} {r.elapsed_ms:.0f} ms", file=sys.stderr)
    records = run_bench(args.dir, algos, args.budget_ms, args.jobs, args.seed, args.oracle, progress)
    report = build_report(records, algos, args.budget_ms)
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if args.csv_out:
        write_csv(records, args.csv_out)
    if args.format == "json":
        print(deterministic_part(report) if args.no_timings else json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report), end="")
    return EXIT_OK


def _common(p: argparse.ArgumentParser, algo: bool = True) -> None:
    if algo:
        p.add_argument("--algo", choices=ALGORITHMS, default="p", help="maximization algorithm (default p)")
    p.add_argument("--seed", type=int, default=0, help="solver / generator seed")
    p.add_argument("--budget-ms", type=int, default=None, help="time budget in milliseconds")
    p.add_argument("--oracle", choices=("brute", "search"), default="search", help="solver backend")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--shuffle", action="store_true", help="permute the target order using --seed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aspfix", description="Maximal consistency and minimal corrections "
                                 "for answer set programs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide consistency and print answer sets")
    p.add_argument("file")
    p.add_argument("--models", type=int, default=1, help="number of answer sets (0 = all)")
    p.add_argument("--dump-completion", metavar="PATH", help="write the compiled clause set")
    _common(p, algo=False)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("maxcon", help="maximal subset of target atoms consistent with the program")
    p.add_argument("file")
    tg = p.add_mutually_exclusive_group(required=True)
    tg.add_argument("--target-pred", metavar="PRED/ARITY")
    tg.add_argument("--target-file", metavar="PATH")
    _common(p)
    p.set_defaults(func=cmd_maxcon)

    p = sub.add_parser("correct", help="minimal correction of an inconsistent program")
    p.add_argument("file")
    p.add_argument("spec", help="correction spec (.spec.json)")
    _common(p)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("gen-graceful", help="generate graceful-graph instances")
    p.add_argument("--vertices", "-V", type=int, default=6)
    p.add_argument("--edges", "-E", type=int, default=10)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=".")
    _common(p, algo=False)
    p.set_defaults(func=cmd_gen_graceful)

    p = sub.add_parser("gen-patterns", help="generate permutation pattern matching instances")
    p.add_argument("--text-len", "-T", type=int, default=8)
    p.add_argument("--pattern-len", "-P", type=int, default=5)
    p.add_argument("--min-len", type=int, default=None, help="positions that must stay filled")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=".")
    _common(p, algo=False)
    p.set_defaults(func=cmd_gen_patterns)

    p = sub.add_parser("bench", help="run all algorithms on a directory of instances")
    p.add_argument("dir")
    p.add_argument("--algos", default=",".join(ALGORITHMS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json-out", metavar="PATH")
    p.add_argument("--csv-out", metavar="PATH")
    p.add_argument("--no-timings", action="store_true", help="omit timings from JSON on stdout")
    p.add_argument("--verbose", "-v", action="store_true")
    _common(p, algo=False)
    p.set_defaults(func=cmd_bench, format="text", budget_ms=DEFAULT_BUDGET_MS)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AspFixError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
