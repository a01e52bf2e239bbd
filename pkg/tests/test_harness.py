"""Scenario runner and command-line interface: record contents, sweeps,
CSV/trace determinism, and exit codes."""

import json

import pytest

from selbroadcast import (
    CSV_COLUMNS,
    Scenario,
    run_scenario,
    sweep,
    write_csv,
    write_trace,
)
from selbroadcast.cli import main


def test_scenario_from_nested_dict():
    raw = {
        "config": {"n": 4, "t": 1, "c": 3, "L": "2D"},
        "strategy": {"name": "equivocating_source", "params": {"seed": 9}},
        "algorithm": "dispute_bb",
        "repetitions": 3,
        "seeds": 100,
    }
    s = Scenario.from_dict(raw)
    assert (s.n, s.t, s.c, s.L) == (4, 1, 3, 12)
    assert s.strategy == "equivocating_source"
    assert s.strategy_params == {"seed": 9}
    assert s.repetitions == 3 and s.base_seed == 100


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(n=4, t=1, c=3, L=12, algorithm="algorithm3")
    with pytest.raises(ValueError):
        Scenario(n=4, t=1, c=3, L=12, repetitions=0)


def test_honest_run_record():
    records = run_scenario(Scenario(n=4, t=1, c=3, L=12, repetitions=2))
    assert len(records) == 2
    for rep, record in enumerate(records):
        assert record.passed
        assert record.seed == rep
        row = record.row
        assert row["db_bits"] == 30
        assert row["dispute_control_invocations"] == 0
        assert row["db_bits_exact"] is True
        assert row["messages_above_floor"] is True
        assert row["bits_at_least_L"] is True
        assert set(row) == set(CSV_COLUMNS)


def test_adversarial_run_record():
    records = run_scenario(
        Scenario(n=4, t=1, c=3, L=12, strategy="equivocating_source", repetitions=2)
    )
    for record in records:
        assert record.passed
        assert 1 <= record.row["dispute_control_invocations"] <= 2
        assert record.row["db_bits_exact"] == ""  # not an honest run


def test_parallel_repetitions_match_serial():
    scenario = Scenario(n=4, t=1, c=3, L=12, strategy="randomized_byzantine", repetitions=4)
    serial = run_scenario(scenario, jobs=1)
    parallel = run_scenario(scenario, jobs=2)
    assert [r.row for r in serial] == [r.row for r in parallel]


def test_sweep_grid_with_max_t_and_skipped_points():
    grid = {
        "n": [4, 5, 7],
        "t": ["max"],
        "c": [3],
        "L": ["1D"],
        "algorithm": ["dispute_bb"],
        "strategy": ["honest"],
    }
    records, errors = sweep(grid)
    assert errors == []
    assert [(r.row["n"], r.row["t"]) for r in records] == [(4, 1), (5, 1), (7, 2)]
    # an invalid point (n=8 needs c > 3) is reported, not fatal
    grid["n"] = [4, 8]
    grid["c"] = [3]
    records, errors = sweep(grid)
    assert [r.row["n"] for r in records] == [4]
    assert len(errors) == 1 and "8" in errors[0]


def test_csv_and_trace_determinism(tmp_path):
    scenario = Scenario(n=4, t=1, c=3, L=12, strategy="randomized_byzantine", repetitions=3)
    paths = []
    for tag in ("a", "b"):
        records = run_scenario(scenario)
        csv_path = tmp_path / f"{tag}.csv"
        trace_path = tmp_path / f"{tag}.jsonl"
        write_csv(records, csv_path)
        write_trace(records[0], trace_path)
        paths.append((csv_path.read_bytes(), trace_path.read_bytes()))
    assert paths[0] == paths[1]


def _write_scenario(tmp_path, **overrides):
    raw = {
        "config": {"n": 4, "t": 1, "c": 3, "L": 12},
        "strategy": "honest",
        "repetitions": 2,
    }
    raw.update(overrides)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(raw))
    return path


def test_cli_run_pass(tmp_path, capsys):
    path = _write_scenario(tmp_path)
    out_csv = tmp_path / "out.csv"
    trace_dir = tmp_path / "traces"
    code = main(["run", str(path), "--out", str(out_csv), "--trace", str(trace_dir)])
    assert code == 0
    printed = capsys.readouterr().out
    assert printed.count("PASS") == 2
    assert out_csv.exists()
    assert len(list(trace_dir.glob("*.jsonl"))) == 2


def test_cli_run_seed_override(tmp_path, capsys):
    path = _write_scenario(tmp_path, repetitions=1)
    assert main(["run", str(path), "--seed", "42"]) == 0
    assert "seed=42" in capsys.readouterr().out


def test_cli_sweep(tmp_path, capsys):
    grid = {
        "n": [4, 7],
        "t": ["max"],
        "c": [3],
        "L": ["1D"],
        "strategy": ["honest", "equivocating_source"],
    }
    path = tmp_path / "grid.json"
    path.write_text(json.dumps(grid))
    assert main(["sweep", str(path), "--out", str(tmp_path / "sweep.csv")]) == 0
    printed = capsys.readouterr().out
    assert printed.count("PASS") == 4


def test_cli_verify_bounds(capsys):
    assert main(["verify-bounds", "4", "1", "12"]) == 0
    printed = capsys.readouterr().out
    assert "total_bb_cost_bits(n, t, L)   = 30" in printed
    assert "5/2" in printed and "within (2, 4)" in printed


def test_cli_replay(tmp_path, capsys):
    scenario_path = _write_scenario(tmp_path, repetitions=1)
    trace_dir = tmp_path / "traces"
    main(["run", str(scenario_path), "--trace", str(trace_dir)])
    capsys.readouterr()
    trace = next(trace_dir.glob("*.jsonl"))
    assert main(["replay", str(trace)]) == 0
    printed = capsys.readouterr().out
    assert "slots" in printed and "DB" in printed
