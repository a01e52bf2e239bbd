"""Scenario runner: JSON scenarios in, metrics records and CSV out.

A scenario pins (n, t, c, L), an algorithm, a strategy and a repetition
count; repetition k runs with seed base_seed + k and a pseudo-random
L-bit input derived from that seed, so every record is reproducible
bit-for-bit.  Repetitions share nothing and may run in parallel.
"""

from __future__ import annotations

import csv
import itertools
import json
import random as _random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .adversaries import make_strategy
from .bounds import (
    check_bounds,
    message_lower_bound,
    static_db_lower_bound_bits,
    total_bb_cost_bits,
)
from .channel import BbOutcome, SystemConfig, check_bb_properties
from .committee import run_algorithm2
from .dispute_bb import run_byzantine_broadcast

ALGORITHMS = ("dispute_bb", "algo2")


@dataclass(frozen=True)
class Scenario:
    n: int
    t: int
    c: int
    L: int
    algorithm: str = "dispute_bb"
    strategy: str = "honest"
    strategy_params: dict = field(default_factory=dict)
    repetitions: int = 1
    base_seed: int = 0
    input_bits: Optional[str] = None  # default: derived from the seed

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    @classmethod
    def from_dict(cls, raw: dict) -> "Scenario":
        cfg = raw.get("config", raw)
        strat = raw.get("strategy", "honest")
        if isinstance(strat, dict):
            name, params = strat.get("name", "honest"), strat.get("params", {})
        else:
            name, params = strat, raw.get("strategy_params", {})
        return cls(
            n=cfg["n"],
            t=cfg["t"],
            c=cfg["c"],
            L=_parse_length(cfg["L"], cfg),
            algorithm=raw.get("algorithm", "dispute_bb"),
            strategy=name,
            strategy_params=dict(params),
            repetitions=raw.get("repetitions", 1),
            base_seed=raw.get("seeds", raw.get("seed", 0)),
            input_bits=raw.get("input"),
        )


def _parse_length(value, cfg) -> int:
    """L may be an int or a "<k>D" multiple of the generation size."""
    if isinstance(value, int):
        return value
    text = str(value).strip().upper()
    if text.endswith("D"):
        mult = int(text[:-1] or "1")
        return mult * cfg["c"] * (cfg["n"] - 2 * cfg["t"])
    return int(text)


# CSV columns, in declaration order.
CSV_COLUMNS = (
    "n", "t", "c", "D", "L", "algorithm", "strategy", "seed", "rep",
    "verdict",
    "honest_messages", "honest_bits", "adversary_messages", "adversary_bits",
    "db_bits", "dd_bits", "dc_bits", "src_bits", "core_bits", "ann_bits",
    "dispute_control_invocations",
    "total_bb_cost_bits", "message_lower_bound", "static_db_lower_bound",
    "db_bits_exact", "messages_above_floor", "bits_at_least_L", "static_bound_met",
)


@dataclass
class MetricsRecord:
    scenario: Scenario
    rep: int
    seed: int
    verdict: str
    outcome: BbOutcome
    row: dict

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"


def scenario_input(scenario: Scenario, seed: int) -> str:
    if scenario.input_bits is not None:
        if len(scenario.input_bits) != scenario.L:
            raise ValueError("scenario input must be exactly L bits")
        return scenario.input_bits
    rng = _random.Random(seed ^ 0x5EB0ADCA57)
    return "".join("01"[rng.getrandbits(1)] for _ in range(scenario.L))


def run_repetition(scenario: Scenario, rep: int) -> MetricsRecord:
    seed = scenario.base_seed + rep
    config = SystemConfig(n=scenario.n, t=scenario.t, c=scenario.c, L=scenario.L, seed=seed)
    strategy = make_strategy(scenario.strategy, config, **scenario.strategy_params)
    x = scenario_input(scenario, seed)
    if scenario.algorithm == "dispute_bb":
        outcome = run_byzantine_broadcast(x, config, strategy)
    else:
        outcome = run_algorithm2(x, config, strategy)
    verdict = check_bb_properties(outcome, x, outcome.faulty)
    honest_run = not outcome.faulty
    report = check_bounds(outcome, scenario.algorithm, honest_run)
    meter = outcome.meter
    row = {
        "n": config.n,
        "t": config.t,
        "c": config.c,
        "D": config.D,
        "L": config.L,
        "algorithm": scenario.algorithm,
        "strategy": scenario.strategy,
        "seed": seed,
        "rep": rep,
        "verdict": str(verdict),
        "honest_messages": meter.honest_messages,
        "honest_bits": meter.honest_bits,
        "adversary_messages": meter.adversary_messages,
        "adversary_bits": meter.adversary_bits,
        "db_bits": meter.phase_honest_bits("DB"),
        "dd_bits": meter.phase_honest_bits("DD"),
        "dc_bits": meter.phase_honest_bits("DC"),
        "src_bits": meter.phase_honest_bits("SRC"),
        "core_bits": meter.phase_honest_bits("CORE"),
        "ann_bits": meter.phase_honest_bits("ANN"),
        "dispute_control_invocations": outcome.dc_invocations,
        "total_bb_cost_bits": str(total_bb_cost_bits(config.n, config.t, config.L)),
        "message_lower_bound": message_lower_bound(config.t),
        "static_db_lower_bound": str(static_db_lower_bound_bits(config.n, config.t, config.L)),
        "db_bits_exact": "" if report.db_bits_exact is None else report.db_bits_exact,
        "messages_above_floor": report.messages_above_floor,
        "bits_at_least_L": report.bits_at_least_L,
        "static_bound_met": report.static_bound_met,
    }
    return MetricsRecord(scenario, rep, seed, str(verdict), outcome, row)


def run_scenario(scenario: Scenario, jobs: int = 1) -> list[MetricsRecord]:
    reps = range(scenario.repetitions)
    if jobs > 1 and scenario.repetitions > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_repetition, itertools.repeat(scenario), reps))
    return [run_repetition(scenario, rep) for rep in reps]


def sweep(grid: dict, jobs: int = 1) -> tuple[list[MetricsRecord], list[str]]:
    """Cartesian product over grid axes; invalid points are reported and
    skipped rather than aborting the sweep."""
    axes = {}
    for key in ("n", "t", "c", "L", "algorithm", "strategy", "repetitions", "seeds"):
        if key in grid:
            v = grid[key]
            axes[key] = v if isinstance(v, list) else [v]
    names = list(axes)
    records: list[MetricsRecord] = []
    errors: list[str] = []
    for combo in itertools.product(*(axes[k] for k in names)):
        point = dict(zip(names, combo))
        point.setdefault("strategy_params", grid.get("strategy_params", {}))
        try:
            if point.get("t") == "max":
                point["t"] = (point["n"] - 1) // 3
            scenario = Scenario.from_dict(point)
            records.extend(run_scenario(scenario, jobs=jobs))
        except (ValueError, KeyError) as exc:
            errors.append(f"{point}: {exc}")
    return records, errors


def write_csv(records: Iterable[MetricsRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for record in records:
            writer.writerow(record.row)


def write_trace(record: MetricsRecord, path) -> None:
    with open(path, "w") as fh:
        for entry in record.outcome.trace:
            fh.write(json.dumps(entry.as_dict(), sort_keys=True) + "\n")
