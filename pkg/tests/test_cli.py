import io
import json

import pytest

from pfsbounds.cli import main


@pytest.fixture
def two_file(tmp_path):
    f = tmp_path / "two_by_two.txt"
    f.write_text("2 2\n1 2\n3 4\n")
    return str(f)


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_bounds_text(two_file):
    assert run(["bounds", two_file, "--bound", "lbm+"]) == (0, "LB_M+ = 8\n")


def test_bounds_json_records(two_file):
    code, text = run(["bounds", two_file, "--bound", "lbm,ps:1,1,best:2,range", "--json"])
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 0
    assert [r["bound"] for r in recs] == ["lbm", "ps:1,1", "best:2", "range"]
    assert recs[1]["value"] == 8 and recs[2]["p"] == 1 and recs[3]["upper"] == 12


def test_exact(two_file):
    assert run(["exact", two_file]) == (0, "OPT = 8, perm = 1 2\n")
    assert run(["exact", two_file, "--distinct"])[1] == "OPT = 8, perm = 1 2, distinct = 2\n"


def test_makespan(two_file):
    assert run(["makespan", two_file, "--perm", "2,1"]) == (0, "Cmax = 9\n")


def test_bad_permutation_is_data_error(two_file):
    assert run(["makespan", two_file, "--perm", "1,1"])[0] == 2
    assert run(["makespan", two_file, "--perm", "a,b"])[0] == 1


def test_usage_errors(two_file):
    assert run(["bounds", two_file])[0] == 1
    assert run(["bounds", two_file, "--bound", "lbm", "--nope"])[0] == 1
    assert run([])[0] == 1


def test_guards(two_file, tmp_path):
    assert run(["bounds", two_file, "--bound", "ps:4,3"])[0] == 3
    f = tmp_path / "wide.txt"
    assert run(["gen", "--jobs", "11", "--machines", "2", "--min", "1", "--max", "5",
                "-o", str(f)])[0] == 0
    assert run(["exact", str(f)])[0] == 3


def test_force_lifts_ps_guard(tmp_path):
    f = tmp_path / "g.txt"
    run(["gen", "--jobs", "7", "--machines", "2", "--min", "1", "--max", "5", "-o", str(f)])
    code, text = run(["bounds", str(f), "--bound", "ps:4,3", "--force"])
    opt = run(["exact", str(f)])[1].split(",")[0].split("=")[1].strip()
    assert code == 0 and text == f"LB_4,3 = {opt}\n"


def test_gen_round_trip(tmp_path):
    f = tmp_path / "g.txt"
    assert run(["gen", "--jobs", "4", "--machines", "3", "--min", "5", "--max", "5",
                "--seed", "9", "-o", str(f)])[0] == 0
    assert f.read_text() == "4 3\n5 5 5 5\n5 5 5 5\n5 5 5 5\n"
    assert run(["bounds", str(f), "--bound", "lbm+"])[1] == "LB_M+ = 30\n"


def test_family(two_file):
    code, text = run(["family", "--machines", "2", "--p", "1", "--s", "1", "--enumerate"])
    assert code == 0
    assert text.splitlines() == ["|U_1,1| = 2", "(1,1) (1,2) (2,2)", "(1,1) (2,1) (2,2)"]
    assert run(["family", "--machines", "9", "--p", "3", "--s", "4"])[1] == "|U_3,4| = 3003\n"


def test_asymptotic_csv():
    code, text = run(["asymptotic", "--axis", "n", "--fixed", "3", "--grid", "5,20",
                      "--samples", "4", "--dist", "uniform:5,5", "--seed", "1"])
    assert code == 0
    assert text.splitlines() == [
        "axis,fixed,dim_value,samples,frac_le_threshold,mean_ratio,proxy",
        "n,3,5,4,1.000000,1.000000,exact",
        "n,3,20,4,1.000000,1.000000,ub",
    ]
    assert run(["asymptotic", "--axis", "n", "--fixed", "3", "--grid", "5",
                "--dist", "gauss:1,2"])[0] == 1


def test_bench_cli(tmp_path, two_file):
    d = tmp_path / "inst"
    d.mkdir()
    (d / "a.txt").write_text("2 2\n1 2\n3 4\n")
    (d / "b.txt").write_text("3 1\n4 5 6\n")
    ref = tmp_path / "ref.csv"
    ref.write_text("instance,plb,ub\na,7,8\nb,15,15\n")
    out = tmp_path / "rep.csv"
    code, text = run(["bench", "--dir", str(d), "--ref", str(ref), "--bounds", "lbm,ps:1,1",
                      "--report", str(out), "--no-runtime"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == 'instance,n,m,lbm,"ps:1,1",best,plb,rpd_lbm,"rpd_ps:1,1",rpd_best'
    assert lines[1] == "a,2,2,7,8,8,7,0.0000,14.2857,14.2857"
    assert "small" in text
    (d / "c.txt").write_text("2 2\n1 2\n3 4\n")
    assert run(["bench", "--dir", str(d), "--ref", str(ref), "--bounds", "lbm"])[0] == 2
