from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from updraw.cli import format_table, main, run_bench, worker_count
from updraw.errors import InvalidParams


def run(tmp_path, *argv):
    return main([str(a) for a in argv])


def gen(tmp_path, family, **params):
    out = tmp_path / f"{family}.json"
    argv = ["gen", family, "-o", out]
    for k, v in params.items():
        argv += [f"--{k}", v]
    assert run(tmp_path, *argv) == 0
    return out


def test_gen_examples(tmp_path):
    assert json.loads(gen(tmp_path, "complete", n=5).read_text())["arcs"].__len__() == 10
    assert json.loads(gen(tmp_path, "nested", n=3).read_text())["n"] == 6
    assert json.loads(gen(tmp_path, "knprime", n=4).read_text())["n"] == 10


def test_gen_bad_params(tmp_path):
    assert run(tmp_path, "gen", "random_dag", "--n", 3, "--m", 9) == 2
    assert run(tmp_path, "gen", "complete") == 2


def test_draw_moment_within_bound(tmp_path):
    g = gen(tmp_path, "complete", n=10)
    out = tmp_path / "d.json"
    assert run(tmp_path, "draw", g, "--method", "moment", "-o", out) == 0
    box = json.loads(out.read_text())["box"]
    assert box["volume"] <= 4000


def test_draw_tree_and_caterpillar(tmp_path):
    t = gen(tmp_path, "random_tree", n=50, seed=3)
    out = tmp_path / "t.json"
    assert run(tmp_path, "draw", t, "--method", "tree", "-o", out) == 0
    box = json.loads(out.read_text())["box"]
    assert (box["X"], box["Y"]) <= (4, 4) and box["Z"] <= 70
    c = gen(tmp_path, "random_caterpillar", n=20, seed=1)
    assert run(tmp_path, "draw", c, "--method", "caterpillar", "-o", out) == 0
    box = json.loads(out.read_text())["box"]
    assert box["X"] <= 2 and box["Y"] <= 2 and box["Z"] <= 20


def test_draw_precondition_exit_code(tmp_path):
    g = gen(tmp_path, "complete", n=5)
    assert run(tmp_path, "draw", g, "--method", "tree") == 3


def test_draw_with_layout_file(tmp_path):
    t = gen(tmp_path, "random_tree", n=30, seed=2)
    lay = tmp_path / "lay.json"
    assert run(tmp_path, "layout", t, "--method", "tree", "-o", lay) == 0
    out = tmp_path / "d.json"
    assert run(tmp_path, "draw", t, "--method", "track5", "--layout", lay, "-o", out) == 0
    assert run(tmp_path, "verify", t, "--drawing", out, "--upward", "--layout", lay) == 0


def test_verify_detects_crossing(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n2 3\n")
    d = tmp_path / "d.json"
    d.write_text(json.dumps({"vertices": [
        {"id": 0, "x": 0, "y": 0, "z": 0}, {"id": 1, "x": 2, "y": 2, "z": 0},
        {"id": 2, "x": 0, "y": 2, "z": 0}, {"id": 3, "x": 2, "y": 0, "z": 0}]}))
    assert run(tmp_path, "verify", g, "--drawing", d) == 4


def test_bad_input_exit_codes(tmp_path):
    cyc = tmp_path / "c.txt"
    cyc.write_text("0 1\n1 0\n")
    assert run(tmp_path, "draw", cyc, "--method", "moment") == 2
    bad = tmp_path / "b.txt"
    bad.write_text("0 x\n")
    assert run(tmp_path, "draw", bad, "--method", "moment") == 2
    assert run(tmp_path, "draw", tmp_path / "missing.txt", "--method", "moment") == 2
    assert run(tmp_path, "draw") == 2


def test_obj_export(tmp_path):
    g = gen(tmp_path, "complete", n=4)
    obj = tmp_path / "x.obj"
    assert run(tmp_path, "draw", g, "--method", "twobend", "--export", "obj", "--obj-out", obj) == 0
    lines = obj.read_text().splitlines()
    assert sum(l.startswith("l ") for l in lines) == 6


def test_subdivide_and_oracle(tmp_path, capsys):
    g = gen(tmp_path, "complete", n=6)
    for method in ("twoqueue", "fourtrack"):
        out = tmp_path / f"{method}.json"
        assert run(tmp_path, "subdivide", g, "--method", method, "-o", out) == 0
        assert json.loads(out.read_text())["ok"]
    capsys.readouterr()
    assert run(tmp_path, "oracle", g, "--what", "bandwidth") == 0
    assert json.loads(capsys.readouterr().out)["value"]["b"] == 5


def test_subdivide_planar(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("0 2\n")
    pts = tmp_path / "p.json"
    pts.write_text("[[0, 0], [5, 1], [0, 2]]")
    out = tmp_path / "s.json"
    assert run(tmp_path, "subdivide", g, "--method", "planar", "--points", pts, "-o", out) == 0
    assert json.loads(out.read_text())["max_division_vertices"] == 1
    pts.write_text("[[0, 2], [5, 1], [0, 0]]")
    assert run(tmp_path, "subdivide", g, "--method", "planar", "--points", pts) == 3


def test_bench_rows_ok():
    rows = run_bench("table1", [10, 30], [0], workers=1)
    assert rows and all(r["ok"] for r in rows)
    assert "method" in format_table(rows)
    sub = run_bench("subdivisions", [8], [0], workers=1)
    twobend = [r for r in sub if r["method"] == "twobend"][0]
    assert twobend["volume"] <= 4 * 64


def test_bench_parallel_matches_serial():
    a = run_bench("trees", [40], [0, 1], workers=1)
    b = run_bench("trees", [40], [0, 1], workers=2)
    assert a == b


def test_bench_report_file(tmp_path):
    rep = tmp_path / "r.jsonl"
    assert run(tmp_path, "bench", "trees", "--sizes", "20,40", "--seeds", "0", "--report", rep) == 0
    rows = [json.loads(l) for l in rep.read_text().splitlines()]
    assert len(rows) == 4 and all(r["ok"] for r in rows)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("UPDRAW_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("UPDRAW_THREADS", "many")
    with pytest.raises(InvalidParams):
        worker_count()


@pytest.mark.skipif(shutil.which("updraw") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["updraw", "gen", "path", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["n"] == 3
