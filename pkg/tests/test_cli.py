import io
import json

import pytest

from fingames import fixtures
from fingames.arena import format_arena
from fingames.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fig3_file(tmp_path):
    path = tmp_path / "fig3.arena"
    code, text, _ = call("examples", "dump", "fig3")
    assert code == 0
    path.write_text(text)
    return str(path)


def test_dump_matches_in_process_build(fig3_file):
    assert open(fig3_file).read() == format_arena(fixtures.build("fig3").obj)


def test_solve_fig3(fig3_file):
    code, out, _ = call("solve", "--input", fig3_file, "--condition", "bnd-uniform-buchi", "--N", "0",
                        "--start", "0")
    assert code == 1
    assert out.splitlines()[0] == "region E: 2"
    code, out, _ = call("solve", "--input", fig3_file, "--condition", "uniform-buchi", "--N", "0",
                        "--start", "0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["region_E"] == [0, 1, 2] and data["winner"] == "E"
    assert sorted(data) == ["condition", "region_A", "region_E", "start", "strategies", "winner"]


def test_solve_emits_and_verify_reads_strategy(fig3_file, tmp_path):
    code, out, _ = call("solve", "--input", fig3_file, "--condition", "buchi", "--start", "0",
                        "--emit-strategy", "A")
    assert code == 0
    strat = tmp_path / "adam.strategy"
    strat.write_text("strategy A positional: 0->1\n")
    code, out, _ = call("verify", "--input", fig3_file, "--strategy", str(strat),
                        "--condition", "finitary-buchi", "--from", "0")
    assert code == 1 and out.startswith("FAILS stem=0,1 cycle=2")


def test_simulate(fig3_file, tmp_path):
    (tmp_path / "e").write_text("strategy E positional:\n")
    (tmp_path / "a").write_text("strategy A positional: 0->1\n")
    code, out, _ = call("simulate", "--input", fig3_file, "--eve", str(tmp_path / "e"),
                        "--adam", str(tmp_path / "a"), "--start", "0", "--horizon", "4")
    assert code == 0
    assert "distances: 0 1 0 0" in out


def test_unfold_and_min_bound(tmp_path):
    code, text, _ = call("examples", "dump", "switch")
    proc = tmp_path / "switch.pd"
    proc.write_text(text)
    code, out, _ = call("unfold", "--pushdown", str(proc), "--height", "3", "--start", "q",
                        "--policy", "drop", "--out", str(tmp_path / "u.arena"))
    assert code == 0 and (tmp_path / "u.arena").read_text().startswith("arena switch@3")
    code, out, _ = call("experiment", "min-bound", "--pushdown", str(proc), "--start", "q",
                        "--height-range", "2..6")
    assert code == 0
    assert out.splitlines()[0] == "height,vertices,min_bound"
    assert "stabilized" in out.splitlines()[-1]


def test_collapse_growth_csv():
    code, out, _ = call("experiment", "collapse-growth", "--example", "bincounter", "--n-range", "2..5")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 4
    gaps = [int(r.split(",")[2]) for r in rows]
    assert gaps == sorted(gaps)


def test_memory_bound_experiment():
    code, out, _ = call("experiment", "memory-bound", "--example", "uniparity", "--player", "E", "--cap", "2")
    assert code == 0 and "least_memory=2" in out


@pytest.mark.parametrize("argv,code", [
    (["solve"], 2),
    (["solve", "--input", "missing.arena", "--condition", "buchi", "--start", "0"], 2),
    (["examples", "dump", "nope"], 2),
    (["examples", "list", "--bogus"], 2),
    (["experiment", "memory-bound", "--example", "adam-memory", "--budget", "50"], 3),
    (["experiment", "memory-bound", "--example", "adam-memory", "--cap", "1"], 1),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_usage_errors_are_one_line(fig3_file):
    code, _, err = call("solve", "--input", fig3_file, "--condition", "buchi", "--N", "1", "--start", "0")
    assert code == 2 and err.count("\n") == 1
