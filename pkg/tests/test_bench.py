import json

from aspfix.bench import (BenchRecord, build_report, delta_table, deterministic_part, discover, family_of,
                          render_text, run_bench, solved_table, write_csv)
from aspfix.generators import gen_graceful, gen_patterns, write_instance


def rec(instance, algo, solved=True, size=0, status=None):
    return BenchRecord(instance, family_of(instance), algo, solved, status or ("ok" if solved else "timeout"),
                       1.0, 3, size if solved else None, 0)


def test_family_of():
    assert family_of("graceful_6_10_s12") == "graceful_6_10"
    assert family_of("plain") == "plain"


def test_vbs_and_delta():
    records = [rec("f_s0", "a", size=2), rec("f_s0", "x", size=1),
               rec("f_s1", "a", solved=False), rec("f_s1", "x", size=3),
               rec("f_s2", "a", size=1), rec("f_s2", "x", solved=False)]
    rows = solved_table(records, ["a", "x"])
    assert rows[0] == {"family": "f", "instances": 3, "solved": {"a": 2, "x": 2}, "vbs": 3}
    assert rows[-1]["family"] == "total"
    assert delta_table(records, ["a", "x"]) == [{"delta": 1, "counts": {"a": 1}}]


def test_empty_dir(tmp_path):
    records = run_bench(tmp_path)
    report = build_report(records, ["a", "u", "p", "x"], 1000)
    assert records == [] and report["solved"] == [] and report["delta"] == []
    assert render_text(report) == "no instances\n"


def _corpus(tmp_path):
    for seed in range(2):
        write_instance(tmp_path, f"patterns_6_4_s{seed}", *gen_patterns(6, 4, seed))
    write_instance(tmp_path, "graceful_4_4_s0", *gen_graceful(4, 4, 0))
    (tmp_path / "orphan.lp").write_text("a.\n")


def test_run_bench(tmp_path):
    _corpus(tmp_path)
    assert [name for name, _, _ in discover(tmp_path)] == ["graceful_4_4_s0", "patterns_6_4_s0", "patterns_6_4_s1"]
    records = run_bench(tmp_path, budget_ms=30_000)
    assert len(records) == 12 and all(r.solved for r in records)
    report = build_report(records, ["a", "u", "p", "x"], 30_000)
    for row in report["solved"]:
        assert all(row["vbs"] >= n for n in row["solved"].values())
    assert all(row["delta"] >= 0 for row in report["delta"])
    text = render_text(report)
    assert "VBS" in text and "patterns_6_4 (2)" in text
    write_csv(records, tmp_path / "out.csv")
    assert (tmp_path / "out.csv").read_text().count("\n") == 13


def test_reproducible(tmp_path):
    _corpus(tmp_path)
    first = deterministic_part(build_report(run_bench(tmp_path, ["u", "x"]), ["u", "x"], 60_000))
    second = deterministic_part(build_report(run_bench(tmp_path, ["u", "x"]), ["u", "x"], 60_000))
    assert first == second
    assert "elapsed_ms" not in first and "timings_ms" not in json.loads(first)


def test_parallel_matches_serial(tmp_path):
    _corpus(tmp_path)
    serial = build_report(run_bench(tmp_path, ["p"]), ["p"], 60_000)
    parallel = build_report(run_bench(tmp_path, ["p"], jobs=2), ["p"], 60_000)
    assert deterministic_part(serial) == deterministic_part(parallel)


def test_timeout_recorded(tmp_path):
    write_instance(tmp_path, "graceful_6_10_s0", *gen_graceful(6, 10, 0))
    records = run_bench(tmp_path, ["x"], budget_ms=1)
    assert records[0].status == "timeout" and not records[0].solved
