"""Command-line surface: exit codes, JSON reports, round trips."""

import json
from fractions import Fraction

import pytest

from colorgames import scheduler_arena, simulate_scheduler_policy
from colorgames.cli import main
from builders import TWO_LOOPS, build_arena
from oracles import growing_block_word


@pytest.fixture
def two_loops_file(tmp_path):
    arena = build_arena(2, TWO_LOOPS)
    path = tmp_path / "two_loops.json"
    path.write_text(arena.to_json())
    return str(path)


@pytest.fixture
def single_color_file(tmp_path):
    arena = build_arena(2, [("u", 1, "u")])
    path = tmp_path / "single.json"
    path.write_text(arena.to_json())
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_balanced_exists(two_loops_file, capsys):
    code, report = run_cli(capsys, "analyze", "--arena", two_loops_file,
                           "--goal", "balanced")
    assert code == 0
    assert report["schema"] == 1
    assert report["result"]["exists"] is True
    loops = report["witness"]["loops"]
    assert [l["coeff"] for l in loops] == [1, 1]


def test_analyze_frequency_witness_coeffs(two_loops_file, capsys):
    code, report = run_cli(capsys, "analyze", "--arena", two_loops_file,
                           "--goal", "freq", "--freq", "2/3,1/3")
    assert code == 0
    assert sorted(l["coeff"] for l in report["witness"]["loops"]) == [1, 2]


def test_analyze_bounded_not_exists(single_color_file, capsys):
    code, report = run_cli(capsys, "analyze", "--arena", single_color_file,
                           "--goal", "bounded")
    assert code == 1
    assert report["result"]["exists"] is False


def test_analyze_bad_frequency_vector(two_loops_file, capsys):
    for bad in ("1/3,1/3", "1/2,-1/2,1", "2/3,1/3,0"):
        code = main(["analyze", "--arena", two_loops_file,
                     "--goal", "freq", "--freq", bad])
        captured = capsys.readouterr()
        assert code == 2
        assert "error" in json.loads(captured.out)


def test_solve_matches_analyze_without_player1(two_loops_file, capsys):
    code, report = run_cli(capsys, "solve", "--arena", two_loops_file,
                           "--goal", "balanced")
    assert code == 0
    assert report["result"]["winner"] == 0
    assert report["result"]["strategies_total"] == 1


def test_gen_scheduler_and_solve(tmp_path, capsys):
    code, arena_doc = run_cli(capsys, "gen", "scheduler")
    assert code == 0
    assert len(arena_doc["nodes"]) == 11
    path = tmp_path / "sched.json"
    path.write_text(json.dumps(arena_doc))
    code, report = run_cli(capsys, "solve", "--arena", str(path),
                           "--goal", "bounded")
    assert code == 0
    assert report["result"]["winner"] == 0


def test_gen_cnf(tmp_path, capsys):
    dimacs = tmp_path / "f.cnf"
    dimacs.write_text("p cnf 1 1\n1 -1 0\n")
    code, arena_doc = run_cli(capsys, "gen", "cnf", "--dimacs", str(dimacs))
    assert code == 0
    assert arena_doc["k"] == 2
    dimacs3 = tmp_path / "g.cnf"
    dimacs3.write_text("p cnf 2 3\n1 2 0\n-1 0\n-2 0\n")
    code, arena_doc = run_cli(capsys, "gen", "cnf", "--dimacs", str(dimacs3))
    assert code == 0
    assert arena_doc["k"] == 4


def test_gen_cnf_bad_dimacs(tmp_path, capsys):
    dimacs = tmp_path / "bad.cnf"
    dimacs.write_text("p cnf 1 1\n1\n")
    code = main(["gen", "cnf", "--dimacs", str(dimacs)])
    assert code == 2
    assert "error" in json.loads(capsys.readouterr().out)


def test_solve_strategy_budget_exceeded(tmp_path, capsys):
    dimacs = tmp_path / "three.cnf"
    dimacs.write_text("p cnf 3 1\n1 2 3 0\n")
    code, arena_doc = run_cli(capsys, "gen", "cnf", "--dimacs", str(dimacs))
    path = tmp_path / "three_arena.json"
    path.write_text(json.dumps(arena_doc))
    code = main(["solve", "--arena", str(path), "--goal", "balanced",
                 "--max-strategies", "7"])
    assert code == 2
    assert "error" in json.loads(capsys.readouterr().out)


def test_solve_cnf_single_clause_player1(tmp_path, capsys):
    dimacs = tmp_path / "x.cnf"
    dimacs.write_text("p cnf 1 1\n1 0\n")
    code, arena_doc = run_cli(capsys, "gen", "cnf", "--dimacs", str(dimacs))
    path = tmp_path / "x_arena.json"
    path.write_text(json.dumps(arena_doc))
    code, report = run_cli(capsys, "solve", "--arena", str(path),
                           "--goal", "balanced")
    assert code == 1
    assert report["result"]["winner"] == 1
    assert "v1" in report["result"]["witness"]


def test_synth_balanced_prefix(two_loops_file, tmp_path, capsys):
    out = tmp_path / "prefix.txt"
    code, report = run_cli(capsys, "synth", "--arena", two_loops_file,
                           "--goal", "balanced", "--emit-prefix", "110",
                           "--prefix-out", str(out))
    assert code == 0
    colors = [triple[1] for triple in report["prefix"]]
    assert colors[:6] == [1, 2, 1, 1, 2, 2]
    assert Fraction(report["convergence"]["deviation"]) <= Fraction(1, 10)
    assert len(out.read_text().splitlines()) == 110


def test_synth_bounded_periodic(two_loops_file, capsys):
    code, report = run_cli(capsys, "synth", "--arena", two_loops_file,
                           "--goal", "bounded", "--emit-prefix", "50")
    assert code == 0
    bound = report["stream"]["bound"]
    assert report["convergence"]["max_abs_diff"] <= bound
    assert len(report["prefix"]) == 50


def test_synth_frequency_long_prefix(two_loops_file, capsys):
    code, report = run_cli(capsys, "synth", "--arena", two_loops_file,
                           "--goal", "freq", "--freq", "2/3,1/3",
                           "--emit-prefix", "100000")
    assert code == 0
    assert Fraction(report["convergence"]["deviation"]) <= Fraction(5, 100)


def test_synth_not_exists(single_color_file, capsys):
    code, report = run_cli(capsys, "synth", "--arena", single_color_file,
                           "--goal", "balanced")
    assert code == 1
    assert report["result"]["exists"] is False
    assert "prefix" not in report


def test_synth_output_reverifies(two_loops_file, tmp_path, capsys):
    out = tmp_path / "prefix.txt"
    run_cli(capsys, "synth", "--arena", two_loops_file, "--goal", "bounded",
            "--emit-prefix", "40", "--prefix-out", str(out))
    code, report = run_cli(capsys, "verify", "--arena", two_loops_file,
                           "--prefix", str(out), "--bound", "1")
    assert code == 0
    assert report["result"]["pass"] is True


def test_synth_frequency_prefix_reverifies(two_loops_file, tmp_path, capsys):
    out = tmp_path / "prefix.txt"
    run_cli(capsys, "synth", "--arena", two_loops_file, "--goal", "freq",
            "--freq", "2/3,1/3", "--emit-prefix", "9000",
            "--prefix-out", str(out))
    code, report = run_cli(capsys, "verify", "--arena", two_loops_file,
                           "--prefix", str(out), "--goal", "freq",
                           "--freq", "2/3,1/3")
    assert code == 0
    assert Fraction(report["result"]["freq_deviation"]) <= Fraction(5, 100)


def test_verify_alternating_prefix(two_loops_file, tmp_path, capsys):
    prefix = tmp_path / "p.txt"
    prefix.write_text("".join(f"u {c} u\n" for c in (1, 2, 1, 2)))
    code, report = run_cli(capsys, "verify", "--arena", two_loops_file,
                           "--prefix", str(prefix), "--bound", "1")
    assert code == 0
    assert report["result"]["max_abs_diff"] == 1


def test_verify_block_word_peak(tmp_path, capsys):
    arena = build_arena(3, [("u", c, "u") for c in (1, 2, 3)])
    arena_path = tmp_path / "three.json"
    arena_path.write_text(arena.to_json())
    prefix = tmp_path / "word.txt"
    prefix.write_text("".join(f"u {c} u\n"
                              for c in growing_block_word(5)))
    code, report = run_cli(capsys, "verify", "--arena", str(arena_path),
                           "--prefix", str(prefix))
    assert code == 0
    peak = report["result"]["max_diff_matrix"]
    assert peak[2][0] == 5  # color 3 over color 1, one per block


def test_verify_scheduler_simulation(tmp_path, capsys):
    raw = scheduler_arena()
    arena_path = tmp_path / "sched.json"
    arena_path.write_text(raw.to_json())
    run = simulate_scheduler_policy(raw, 3, 2000)
    prefix = tmp_path / "sim.txt"
    prefix.write_text("".join(
        f"{e.src} {'null' if e.color is None else e.color} {e.dst}\n"
        for e in run.edges))
    code, report = run_cli(capsys, "verify", "--arena", str(arena_path),
                           "--prefix", str(prefix), "--bound", "2")
    assert code == 0
    assert report["result"]["pass"] is True


def test_verify_rejects_broken_walk(two_loops_file, tmp_path, capsys):
    prefix = tmp_path / "bad.txt"
    prefix.write_text("u 1 u\nv 2 v\n")
    code = main(["verify", "--arena", two_loops_file,
                 "--prefix", str(prefix)])
    assert code == 2
    assert "error" in json.loads(capsys.readouterr().out)


def test_verify_fail_exit_code(two_loops_file, tmp_path, capsys):
    prefix = tmp_path / "ones.txt"
    prefix.write_text("u 1 u\nu 1 u\nu 1 u\n")
    code, report = run_cli(capsys, "verify", "--arena", two_loops_file,
                           "--prefix", str(prefix), "--bound", "2")
    assert code == 1
    assert report["result"]["pass"] is False
