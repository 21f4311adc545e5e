import io
import json
import subprocess
import sys

import jsonschema
import pytest

from domset.cli import main, run_suite
from domset.graph import Graph
from domset.io import RESULT_SCHEMA, write_graph_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def strip_timing(text):
    d = json.loads(text)
    d.pop("timing")
    return d


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in {
        "p6": Graph.path(6),
        "c5": Graph.cycle(5),
        "k4": Graph.complete(4),
        "p4": Graph.path(4),
        "p3": Graph.path(3),
        "split": Graph(4, [(1, 2), (3, 4)]),
    }.items():
        paths[name] = tmp_path / f"{name}.txt"
        paths[name].write_text(write_graph_text(g))
    paths["w4"] = tmp_path / "w4.txt"
    paths["w4"].write_text("1 4\n2 2\n2 2\n4 1\n")
    paths["w6"] = tmp_path / "w6.txt"
    paths["w6"].write_text("\n".join(["1"] * 6) + "\n")
    paths["e3"] = tmp_path / "e3.txt"
    paths["e3"].write_text("3 1\n1 0 0\n0 0 1\n1 0 0\n")
    paths["bad"] = tmp_path / "bad.txt"
    paths["bad"].write_text("2 1\n1 1\n")
    return paths


def test_solve_p6_cds(files):
    code, out, _ = run("solve", "--graph", files["p6"], "--variant", "cds", "--method", "exact", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["objective"] == 4 and d["sets"] == [[2, 3, 4, 5]]
    assert d["certificate"]["feasible"]


def test_check_c5_not_two_connected(files):
    code, out, _ = run("check", "--graph", files["c5"], "--set", "1,2,3", "--k", 2)
    assert code == 1
    assert "infeasible" in out


def test_greedy_and_exact_agree_on_k4(files):
    objs = []
    for method in ("greedy", "exact"):
        code, out, _ = run("solve", "--graph", files["k4"], "--variant", "ds", "--method", method, "--json")
        assert code == 0
        objs.append(json.loads(out)["objective"])
    assert objs == [1, 1]


def test_human_output_has_no_timing(files):
    code, out, _ = run("solve", "--graph", files["p6"], "--variant", "cds")
    assert code == 0
    assert "2 3 4 5" in out and "elapsed" not in out


def test_pareto_and_msest(files):
    code, out, _ = run("pareto", "--graph", files["p4"], "--weights", files["w4"], "--json")
    assert code == 0
    assert json.loads(out)["objectives"] == [[3, 6], [4, 4], [6, 3]]
    code, out, _ = run("pareto", "--graph", files["p4"], "--weights", files["w4"], "--all-sets")
    assert code == 0 and "(4, 4)" in out
    code, out, _ = run("msest", "--graph", files["p3"], "--estimates", files["e3"], "--json")
    assert code == 0
    d = json.loads(out)
    assert d["sets"] == [[2]] and d["objective"] == 0


@pytest.mark.parametrize(
    "argv, code",
    [
        (["solve", "--graph", "bad"], 2),
        (["solve", "--graph", "/nonexistent"], 2),
        (["solve", "--graph", "p6", "--k", "0"], 2),
        (["solve", "--graph", "p6", "--method", "magic"], 2),
        (["check", "--graph", "p6", "--set", "1,x"], 2),
        (["check", "--graph", "p6", "--set", "1,9"], 2),
        (["solve", "--graph", "split"], 0),
        (["solve", "--graph", "split", "--variant", "cds"], 1),
        (["solve", "--graph", "c5", "--variant", "cds", "--k", "3"], 1),
        (["pareto", "--graph", "p4", "--weights", "w6"], 2),
        (["nonsense"], 2),
    ],
)
def test_exit_codes(files, argv, code):
    argv = [str(files.get(a, a)) for a in argv]
    assert run(*argv)[0] == code


def test_resource_cap_exit_code(tmp_path):
    path = tmp_path / "p30.txt"
    path.write_text(write_graph_text(Graph.path(30)))
    assert run("solve", "--graph", path, "--method", "exact")[0] == 3


def _invocations(files):
    yield ["solve", "--graph", files["p6"], "--variant", "cds", "--method", "bb"]
    yield ["solve", "--graph", files["p6"], "--variant", "ds", "--method", "greedy"]
    yield ["solve", "--graph", files["c5"], "--variant", "cds", "--method", "two-phase"]
    yield ["solve", "--graph", files["c5"], "--variant", "cds", "--k", 2, "--m", 2]
    yield ["solve", "--graph", files["split"], "--variant", "cds"]
    yield ["pareto", "--graph", files["p4"], "--weights", files["w4"], "--all-sets"]
    yield ["msest", "--graph", files["p3"], "--estimates", files["e3"]]
    yield ["msest", "--graph", files["p4"], "--weights", files["w4"], "--levels", 3, "--k", 1]
    yield ["check", "--graph", files["c5"], "--set", "1,2,3", "--k", 2]
    yield ["oracle", "solve", "--graph", files["p6"], "--variant", "cds"]
    yield ["oracle", "pareto", "--graph", files["p4"], "--weights", files["w4"]]
    yield ["oracle", "msest", "--graph", files["p3"], "--estimates", files["e3"]]
    yield ["oracle", "suite", "--seeds", 2, "--max-n", 7]


def test_every_json_document_validates(files):
    for argv in _invocations(files):
        code, out, err = run(*argv, "--json")
        assert code in (0, 1), (argv, err)
        jsonschema.validate(json.loads(out), RESULT_SCHEMA)


def test_repeated_invocations_are_identical(files):
    for argv in _invocations(files):
        a, b = run(*argv), run(*argv)
        assert a == b
        ja, jb = run(*argv, "--json"), run(*argv, "--json")
        assert ja[0] == jb[0] and strip_timing(ja[1]) == strip_timing(jb[1])


def test_gen_writes_files(tmp_path):
    g, w, e = tmp_path / "g.txt", tmp_path / "w.txt", tmp_path / "e.txt"
    argv = ["gen", "--model", "fixture", "--fixture", "ring-3dom", "--core", 5, "--leaves", 1,
            "--out", g, "--weights-out", w, "--estimates-out", e, "--mu", 3]
    assert run(*argv)[0] == 0
    first = (g.read_text(), w.read_text(), e.read_text())
    assert "core: 1,2,3,4,5 k=2 m=3" in first[0]
    code, out, _ = run("check", "--graph", g, "--set", "1,2,3,4,5", "--k", 2, "--m", 3)
    assert code == 0
    assert run(*argv)[0] == 0
    assert (g.read_text(), w.read_text(), e.read_text()) == first
    assert run("msest", "--graph", g, "--estimates", e)[0] == 0
    assert run("pareto", "--graph", g, "--weights", w, "--k", 1)[0] == 0


def test_gen_to_stdout_is_deterministic():
    a = run("gen", "--model", "gnp", "--n", 9, "--p", 0.3, "--connected", "--seed", 4)
    b = run("gen", "--model", "gnp", "--n", 9, "--p", 0.3, "--connected", "--seed", 4)
    assert a == b and a[0] == 0
    assert run("gen", "--model", "udg", "--n", 9, "--seed", 4)[0] == 0


def test_small_oracle_suite_is_clean():
    checks, problems = run_suite(seeds=3, max_n=8)
    assert checks > 0 and problems == []


def test_console_script_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "domset.cli", "solve", "--graph", str(files["k4"]), "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["objective"] == 1
