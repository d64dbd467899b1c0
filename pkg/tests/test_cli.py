import io
import json

import pytest

from unitflow.cli import main

TRIANGLE = "c negative triangle\np mcf 3 3\na 1 2 -1\na 2 3 -1\na 3 1 -1\n"


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def tri(tmp_path):
    p = tmp_path / "tri.mcf"
    p.write_text(TRIANGLE)
    return str(p)


@pytest.mark.parametrize("algo", ["general", "dial", "planar"])
def test_solve_triangle(tri, algo):
    code, out = run(["solve", tri, "--algo", algo, "--certify"])
    assert code == 0
    assert out.splitlines()[0] == "s -3"


def test_solve_json_and_trace(tri, tmp_path):
    trace = tmp_path / "trace.jsonl"
    code, out = run(["solve", tri, "--format", "json", "--trace", str(trace)])
    assert code == 0
    rep = json.loads(out)
    assert rep["cost"] == -3 and rep["flow"] == [1, 1, 1]
    rows = [json.loads(line) for line in trace.read_text().splitlines()]
    assert len(rows) == rep["phases"]


def test_verify_detects_tampering(tri, tmp_path):
    code, out = run(["solve", tri])
    sol = tmp_path / "sol.txt"
    sol.write_text(out)
    assert run(["verify", tri, str(sol)]) == (0, "ok cost -3\n")
    sol.write_text(out.replace("f 2 1", "f 2 0"))
    code, report = run(["verify", tri, str(sol)])
    assert code == 1
    assert "conservation" in report


def test_verify_without_prices(tri, tmp_path):
    sol = tmp_path / "sol.txt"
    sol.write_text("s 0\nf 1 0\nf 2 0\nf 3 0\n")
    code, report = run(["verify", tri, str(sol)])
    assert code == 1 and "negative cycle" in report


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.mcf"
    bad.write_text("p mcf 2 1\na 1 3 4\n")
    assert run(["solve", str(bad)])[0] == 2
    assert run(["solve", str(tmp_path / "missing.mcf")])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_non_planar_input_for_planar_algo(tmp_path):
    k5 = tmp_path / "k5.mcf"
    arcs = [(u, v) for u in range(1, 6) for v in range(u + 1, 6)]
    k5.write_text(f"p mcf 5 {len(arcs)}\n" + "".join(f"a {u} {v} -1\n" for u, v in arcs))
    assert run(["solve", str(k5), "--algo", "planar"])[0] == 2
    assert run(["solve", str(k5)])[0] == 0


def test_flow_command(tri):
    code, out = run(["flow", tri, "--source", "1", "--sink", "2", "--value", "1", "--format", "json", "--certify"])
    assert code == 0
    assert json.loads(out)["cost"] == -1
    assert run(["flow", tri, "--source", "1", "--sink", "2", "--value", "2"])[0] == 1
    assert run(["flow", tri, "--source", "1", "--sink", "9", "--value", "1"])[0] == 2


def test_internal_error_exit_code(tri, monkeypatch):
    from unitflow import cli
    from unitflow.graph import InvariantError

    def boom(*a, **k):
        raise InvariantError("forced")

    monkeypatch.setattr(cli, "min_cost_circulation", boom)
    assert run(["solve", tri])[0] == 3


def test_gen_is_deterministic(tmp_path):
    a = run(["gen", "--kind", "triangulation", "--n", "20", "--seed", "3"])
    b = run(["gen", "--kind", "triangulation", "--n", "20", "--seed", "3"])
    assert a == b and a[0] == 0
    assert run(["gen", "--kind", "grid", "--rows", "0", "--cols", "2"])[0] == 2


def test_bench_rerun_is_identical(tmp_path):
    for s in range(10):
        assert run(["gen", "--kind", "grid", "--rows", "4", "--cols", "5", "--seed", str(s),
                    "-o", str(tmp_path / f"g{s:02d}.mcf")])[0] == 0
    first = run(["bench", str(tmp_path), "--algo", "planar"])
    second = run(["bench", str(tmp_path), "--algo", "planar"])
    assert first == second
    lines = first[1].splitlines()
    assert len(lines) == 10
    assert all(json.loads(line)["certified"] for line in lines)


def test_bench_algorithms_agree(tmp_path):
    for s in range(3):
        run(["gen", "--kind", "triangulation", "--n", "30", "--multiplicity", "2", "--seed", str(s),
             "-o", str(tmp_path / f"t{s}.mcf")])
    code, out = run(["bench", str(tmp_path), "--algo", "general", "--algo", "dial", "--algo", "planar", "--timing"])
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 9
    by = {}
    for row in rows:
        by.setdefault(row["instance"], set()).add(row["cost"])
        assert "wall_time" in row
    assert all(len(v) == 1 for v in by.values())
    assert {row["algorithm"] for row in rows} == {"general", "dial-general", "planar"}
