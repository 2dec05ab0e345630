import csv
import io
import json
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from pfsbounds.bench import (
    BenchError,
    BenchRow,
    ReferenceEntry,
    emit_report,
    group_of,
    parse_group_rule,
    parse_reference,
    round4,
    run_bench,
    run_bench_instances,
    summarize,
)
from pfsbounds.bounds import lb_machine_plus, lb_machine_plus_plus
from pfsbounds.instance import GenSpec, generate, serialize
from pfsbounds.prefix_suffix import lb_prefix_suffix


def row(plb, value, name="x", n=20):
    return BenchRow(name, n, 5, {"lbm+": value}, plb)


def test_rpd_definition_and_counts():
    rules = parse_group_rule("small<=60,large>=100")
    up, eq, down = row(100, 101, "a"), row(100, 100, "b"), row(100, 97, "c")
    assert up.rpd("lbm+") == 1
    assert str(round4(up.rpd("lbm+"))) == "1.0000"
    assert eq.rpd("lbm+") == 0
    (s, best) = summarize([up, eq, down], ["lbm+"], rules)[:2]
    assert (s.improved, s.equal, s.worsened, s.size) == (1, 1, 1, 3)
    assert s.arpd == Fraction(1 + 0 - 3, 3)
    assert best.bound == "best"


def test_zero_plb_excluded_from_arpd():
    rules = parse_group_rule("all>=0")
    rows = [row(0, 5, "z"), row(10, 11, "y")]
    s = summarize(rows, ["lbm+"], rules)[0]
    assert rows[0].rpd("lbm+") is None
    assert s.arpd == 10 and s.improved == 2


def test_round_half_even():
    assert round4(Fraction(12345, 100000000) + Fraction(5, 10 ** 9)) == Decimal("0.0001")
    assert round4(Fraction(-88065, 100000)) == Decimal("-0.8806")
    assert round4(Fraction(-88075, 100000)) == Decimal("-0.8808")


def test_group_rule():
    rules = parse_group_rule("small<=60,large>=100")
    assert [group_of(n, rules) for n in (20, 60, 80, 100, 500)] == \
        ["small", "small", None, "large", "large"]
    with pytest.raises(ValueError):
        parse_group_rule("small=<60")


def test_reference_parsing():
    refs = parse_reference("instance,plb,ub\nta001,1232,1278\nta002,1290,\n")
    assert refs["ta001"] == ReferenceEntry("ta001", 1232, 1278)
    assert refs["ta002"].ub is None
    with pytest.raises(BenchError):
        parse_reference("name,plb\nx,1\n")
    with pytest.raises(BenchError):
        parse_reference("instance,plb,ub\nx,10,5\n")


@pytest.fixture
def bench_dir(tmp_path):
    insts = [generate(GenSpec(n, m, 1, 99, seed=k), name=f"i{k}")
             for k, (n, m) in enumerate([(8, 3), (12, 4), (6, 5), (110, 3)])]
    d = tmp_path / "inst"
    d.mkdir()
    lines = ["instance,plb,ub"]
    for k, inst in enumerate(insts):
        (d / f"i{k}.txt").write_text(serialize(inst, ("plain", "vrf")[k % 2]))
        lines.append(f"i{k},{lb_machine_plus(inst) + (k - 1)},")
    ref = tmp_path / "ref.csv"
    ref.write_text("\n".join(lines) + "\n")
    return d, ref, insts


def test_run_bench_end_to_end(bench_dir):
    d, ref, insts = bench_dir
    res = run_bench(d, ref, ["lbm+", "ps:1,1", "ps:2,1"])
    assert res.errors == []
    assert [r.instance for r in res.rows] == ["i0", "i1", "i2", "i3"]
    for r, inst in zip(res.rows, insts):
        assert r.values["ps:1,1"] == lb_prefix_suffix(inst, 1, 1)
        assert r.best == max(r.values.values())
        for b in ["lbm+", "ps:1,1", "ps:2,1"]:
            assert r.rpd("best") >= r.rpd(b)
    small = [s for s in res.summaries if s.group == "small"]
    large = [s for s in res.summaries if s.group == "large"]
    assert all(s.improved + s.equal + s.worsened == 3 for s in small)
    assert all(s.size == 1 for s in large)
    assert res.summary("small", "best").arpd >= res.summary("small", "ps:2,1").arpd


def test_run_bench_reports_missing_reference_and_bad_file(bench_dir):
    d, ref, _ = bench_dir
    (d / "extra.txt").write_text("2 2\n1 2\n3 4\n")
    (d / "broken.txt").write_text("2 2\n1 x\n")
    res = run_bench(d, ref, ["lbm"])
    assert any("extra.txt" in e and "no reference" in e for e in res.errors)
    assert any(e.startswith("broken.txt") and "line 2" in e for e in res.errors)
    assert len(res.rows) == 4


def test_run_bench_rejects_upper_bounds(bench_dir):
    d, ref, _ = bench_dir
    with pytest.raises(ValueError):
        run_bench(d, ref, ["ubh"])


def test_bound_errors_become_row_errors():
    inst = generate(GenSpec(3, 2, 1, 9, seed=1), name="tiny")
    res = run_bench_instances([(inst, ReferenceEntry("tiny", 10))], ["ps:2,2"])
    assert res.rows == [] and "tiny" in res.errors[0]


def test_thread_count_gives_identical_report(bench_dir):
    d, ref, _ = bench_dir
    a = emit_report(run_bench(d, ref, ["lbm++", "ps:1,2"], threads=1), runtime=False)
    b = emit_report(run_bench(d, ref, ["lbm++", "ps:1,2"], threads=4), runtime=False)
    assert a == b


def test_csv_layout_and_round_trip(bench_dir):
    d, ref, _ = bench_dir
    res = run_bench(d, ref, ["lbm+", "ps:1,1"])
    text = emit_report(res, "csv")
    rows_part, summary_part = text.split("\n\n")
    records = list(csv.reader(io.StringIO(rows_part)))
    assert records[0] == ["instance", "n", "m", "lbm+", "ps:1,1", "best", "plb",
                          "rpd_lbm+", "rpd_ps:1,1", "rpd_best", "runtime_ms"]
    assert records[1][0] == "i0" and int(records[1][4]) == res.rows[0].values["ps:1,1"]
    summary = list(csv.DictReader(io.StringIO(summary_part)))
    assert summary[0]["group"] == "small" and summary[0]["bound"] == "lbm+"


def test_empty_report_is_header_only():
    res = run_bench_instances([], ["lbm"], "small<=60")
    text = emit_report(res, "csv", runtime=True)
    first = text.split("\n")[0]
    assert first == "instance,n,m,lbm,best,plb,rpd_lbm,rpd_best,runtime_ms"
    assert next(csv.reader(io.StringIO(text))) == first.split(",")


def test_table_and_jsonl(bench_dir):
    d, ref, _ = bench_dir
    res = run_bench(d, ref, ["lbm", "lbj+", "ps:1,1"])
    table = emit_report(res, "table", runtime=False)
    header = table.splitlines()[0].split()
    assert header == ["instance", "n", "m", "lbm", "lbj+", "ps:1,1", "best", "plb",
                      "rpd_lbm", "rpd_lbj+", "rpd_ps:1,1", "rpd_best"]
    body = table.splitlines()[2]
    assert len(body.split()) == len(header)
    recs = [json.loads(line) for line in emit_report(res, "jsonl").splitlines()]
    assert recs[0]["bounds"].keys() == {"lbm", "lbj+", "ps:1,1"}
    assert any("arpd" in r for r in recs)


def test_violations_flag_unsound_rows():
    r = BenchRow("x", 5, 2, {"lbm": 12}, plb=10, ub=11)
    from pfsbounds.bench import BenchResult

    assert BenchResult(["lbm"], [r], []).violations() == ["x: lbm = 12 exceeds UB 11"]


def test_multi_instance_taillard_file(tmp_path):
    insts = [generate(GenSpec(20, 5, 1, 99, seed=k)) for k in range(3)]
    d = tmp_path / "tai"
    d.mkdir()
    (d / "tai20_5.txt").write_text("".join(serialize(i, "taillard") for i in insts))
    ref = tmp_path / "ref.csv"
    ref.write_text("instance,plb,ub\n" + "".join(
        f"tai20_5.txt#{k + 1},{lb_machine_plus(i)},\n" for k, i in enumerate(insts)))
    res = run_bench(d, ref, ["lbm+", "lbm++"])
    assert res.errors == []
    assert [r.instance for r in res.rows] == ["tai20_5.txt#1", "tai20_5.txt#2", "tai20_5.txt#3"]
    s = res.summary("small", "lbm+")
    assert (s.equal, s.arpd) == (3, 0)
    assert res.summary("small", "lbm++").worsened == 0
    for r, inst in zip(res.rows, insts):
        assert r.values["lbm++"] == lb_machine_plus_plus(inst)
