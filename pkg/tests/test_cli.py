import csv
import io
import json

from tarski_query.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_solve_kleene():
    code, out = run("solve", "--algo", "kleene", "--n", "7", "--k", "2", "--a", "2,4")
    assert code == 0
    assert "point 2,4\nqueries 7\n" in out


def test_solve_family_with_trace():
    code, out = run("solve", "--algo", "family", "--n", "2", "--k", "3", "--a", "1,0,1", "--trace")
    assert code == 0
    assert out.splitlines()[:4] == [
        "query 1,1,1 -> 1,0,1",
        "query 1,0,1 -> 1,0,1",
        "point 1,0,1",
        "queries 2",
    ]


def test_solve_dnc_chain():
    code, out = run("solve", "--algo", "dnc", "--n", "7", "--k", "1", "--a", "2")
    assert code == 0
    assert "point 2\n" in out
    queries = int(out.split("queries ")[1].split()[0])
    assert queries <= 4


def test_solve_from_instance_file(tmp_path):
    path = tmp_path / "lift.json"
    path.write_text(json.dumps({"kind": "clamp-lift", "n": 4, "inner": {"kind": "hidden-point", "n": 2, "k": 2, "a": [1, 0]}}))
    code, out = run("solve", "--algo", "kleene-top", "--instance", str(path))
    assert code == 0 and "point 1,0" in out


def test_solve_non_monotone_exits_one(tmp_path):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps({"kind": "table", "n": 2, "k": 1, "rows": [[0, 1], [1, 0]]}))
    assert run("solve", "--algo", "kleene", "--table", str(path))[0] == 1
    assert run("solve", "--algo", "dnc", "--table", str(path))[0] == 1


def test_solve_bad_instance(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "table", "n": 2, "k": 1, "rows": [[0, 1], [0, 0]]}))
    code, _ = run("solve", "--instance", str(path))
    assert code == 2
    assert "rows[1]" in capsys.readouterr().err


def test_bench_exhaustive(tmp_path):
    out_path = tmp_path / "bench.csv"
    code, out = run("bench", "--algo", "kleene", "--algo", "family", "--n", "2", "--k", "2", "--all-a", "--out", str(out_path))
    assert code == 0
    rows = list(csv.DictReader(out_path.open()))
    assert list(rows[0]) == ["solver", "n", "k", "instance", "queries", "correct", "wall_ns"]
    assert len(rows) == 8
    summary = json.loads((tmp_path / "bench.csv.summary.json").read_text())
    assert [s["solver"] for s in summary] == ["kleene", "family"]
    assert summary[0]["mean_queries"] == 2.0
    assert all(r["correct"] == "true" for r in rows)


def test_bench_sampled_family_bound(tmp_path):
    out_path = tmp_path / "bench.csv"
    code, _ = run("bench", "--algo", "family", "--n", "64", "--k", "64", "--trials", "1000", "--seed", "7", "--out", str(out_path))
    assert code == 0
    rows = list(csv.DictReader(out_path.open()))
    assert len(rows) == 1000
    assert max(int(r["queries"]) for r in rows) <= 128


def test_bench_is_deterministic(tmp_path):
    args = ["bench", "--algo", "dnc,kleene", "--n", "9", "--k", "3", "--trials", "50", "--seed", "3", "--no-timing"]
    run(*args, "--out", str(tmp_path / "a.csv"))
    run(*args, "--out", str(tmp_path / "b.csv"))
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert b"\r" not in (tmp_path / "a.csv").read_bytes()


def test_bench_usage_errors():
    assert run("bench", "--n", "2", "--k", "2", "--all-a")[0] == 2
    assert run("bench", "--algo", "nope", "--n", "2", "--k", "2", "--all-a")[0] == 2
    assert run("bench", "--algo", "kleene", "--n", "2", "--k", "2", "--trials", "5")[0] == 2
    assert run("bench", "--algo", "kleene", "--n", "2", "--k", "30", "--all-a")[0] == 2


def test_adversary_summary(tmp_path):
    out_path = tmp_path / "gain.csv"
    code, out = run("adversary", "--k", "32", "--strategy", "uniform-random", "--trials", "1000", "--seed", "1", "--out", str(out_path))
    assert code == 0
    mean = float(out.split("mean_gain ")[1].split()[0])
    assert mean <= 4
    assert out_path.read_text().startswith("trial,step,gain,delta0,delta1\n")
    assert "C,freq,bound,se" in out


def test_adversary_replay_fig2(tmp_path, fig2):
    a, queries, _ = fig2
    qfile = tmp_path / "fig2.txt"
    qfile.write_text("\n".join(",".join(map(str, q)) for q in queries) + "\n")
    out_path = tmp_path / "gain.csv"
    code, _ = run(
        "adversary", "--k", "7", "--strategy", f"replay:{qfile}", "--a", ",".join(map(str, a)),
        "--trials", "1", "--out", str(out_path),
    )
    assert code == 0
    rows = list(csv.DictReader(out_path.open()))
    assert [int(r["gain"]) for r in rows] == [3, 3, 1]


def test_adversary_usage_errors():
    assert run("adversary", "--k", "8", "--trials", "0")[0] == 2
    assert run("adversary", "--k", "8", "--n", "3")[0] == 2
    assert run("adversary", "--k", "8", "--strategy", "bogus")[0] == 2


def test_verify_family_sweep():
    code, out = run("verify", "--family", "--n", "5", "--k", "3", "--all-a")
    assert code == 0
    for check in ("monotone", "fixed-points", "tarski-lattice", "unique-a"):
        assert f"{check}: PASS (125/125)" in out


def test_verify_family_single():
    code, out = run("verify", "--family", "--n", "7", "--k", "2", "--a", "2,4")
    assert code == 0
    assert "fixed-points {2,4}" in out


def test_verify_swap_table(tmp_path):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps({"kind": "table", "n": 2, "k": 1, "rows": [[0, 1], [1, 0]]}))
    report = tmp_path / "report.json"
    code, out = run("verify", "--table", str(path), "--out", str(report))
    assert code == 1
    assert "monotone: FAIL" in out and "witness u=0 v=1" in out
    assert json.loads(report.read_text()) == {"instance": str(path), "monotone": False, "witness": {"u": [0], "v": [1]}}


def test_verify_budget():
    assert run("verify", "--family", "--n", "2", "--k", "25", "--all-a")[0] == 2


def test_help_exits_zero(capsys):
    assert run("--help")[0] == 0
