"""Command-line harness.

  selbroadcast run <scenario.json>   one scenario, CSV + optional traces
  selbroadcast sweep <grid.json>     cartesian parameter sweep
  selbroadcast verify-bounds N T L   print the closed-form bound values
  selbroadcast replay <trace.jsonl>  summarize a recorded slot log

Exit code is 0 iff every verdict is Pass.  On the first Fail the suite
aborts, printing the offending seed and the path of a replayable trace.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path

from .bounds import (
    bit_cost_ratio,
    detectable_cost_bits,
    message_lower_bound,
    static_db_lower_bound_bits,
    total_bb_cost_bits,
)
from .harness import MetricsRecord, Scenario, run_scenario, sweep, write_csv, write_trace


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="CSV output path")
    parser.add_argument("--trace", type=Path, help="directory for JSONL slot logs")
    parser.add_argument("--seed", type=int, help="override the base seed")
    parser.add_argument("--jobs", type=int, default=1, help="parallel repetitions")


def _report(records: list[MetricsRecord], args) -> int:
    if args.out:
        write_csv(records, args.out)
    trace_dir = args.trace
    if trace_dir:
        trace_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for record in records:
        label = (
            f"n={record.row['n']} t={record.row['t']} L={record.row['L']} "
            f"{record.row['algorithm']}/{record.row['strategy']} seed={record.seed}"
        )
        if trace_dir:
            path = trace_dir / f"trace_{record.row['algorithm']}_{record.row['strategy']}_{record.seed}_{record.rep}.jsonl"
            write_trace(record, path)
        if record.passed:
            print(f"PASS {label}")
        else:
            path = (trace_dir or Path(".")) / f"fail_seed{record.seed}.jsonl"
            write_trace(record, path)
            print(f"FAIL {label} verdict={record.verdict} trace={path}")
            status = 1
            break
    return status


def _cmd_run(args) -> int:
    raw = json.loads(Path(args.scenario).read_text())
    if args.seed is not None:
        raw["seeds"] = args.seed
    scenario = Scenario.from_dict(raw)
    records = run_scenario(scenario, jobs=args.jobs)
    return _report(records, args)


def _cmd_sweep(args) -> int:
    grid = json.loads(Path(args.grid).read_text())
    if args.seed is not None:
        grid["seeds"] = args.seed
    records, errors = sweep(grid, jobs=args.jobs)
    for err in errors:
        print(f"SKIP {err}")
    return _report(records, args)


def _cmd_verify_bounds(args) -> int:
    n, t, L = args.n, args.t, args.L
    c = 1
    while n > (1 << c) - 1:
        c += 1
    D = c * (n - 2 * t)
    print(f"n={n} t={t} L={L} (c={c}, D={D})")
    print(f"detectable_cost_bits(n, t, D) = {detectable_cost_bits(n, t, D)}")
    print(f"total_bb_cost_bits(n, t, L)   = {total_bb_cost_bits(n, t, L)}")
    ratio = bit_cost_ratio(n, t)
    in_range = 2 < ratio < 4
    print(f"bit cost ratio                = {ratio} ({'within' if in_range else 'OUTSIDE'} (2, 4))")
    print(f"message_lower_bound(t)        = {message_lower_bound(t)}")
    f = args.f if args.f is not None else t
    print(f"static_db_lower_bound(n, f={f}, L) = {static_db_lower_bound_bits(n, f, L)}")
    return 0 if (in_range or t == 0) else 1


def _cmd_replay(args) -> int:
    per_phase: dict[str, list[int]] = defaultdict(lambda: [0, 0, 0, 0])
    slots = 0
    for line in Path(args.trace).read_text().splitlines():
        if not line.strip():
            continue
        entry = json.loads(line)
        slots += 1
        bucket = per_phase[entry["phase"]]
        messages = entry["bits"] and 1 or 0
        if entry["kind"] == "selective":
            messages = 1  # per-receiver split is not recorded per line
        if entry.get("honest", True):
            bucket[0] += 1
            bucket[1] += entry["bits"]
        else:
            bucket[2] += 1
            bucket[3] += entry["bits"]
    print(f"{slots} slots")
    print(f"{'phase':<8}{'honest_msgs':>12}{'honest_bits':>12}{'adv_msgs':>10}{'adv_bits':>10}")
    for phase in sorted(per_phase):
        h_m, h_b, a_m, a_b = per_phase[phase]
        print(f"{phase:<8}{h_m:>12}{h_b:>12}{a_m:>10}{a_b:>10}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="selbroadcast", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario file")
    p_run.add_argument("scenario", type=Path)
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid")
    p_sweep.add_argument("grid", type=Path)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_vb = sub.add_parser("verify-bounds", help="evaluate the closed-form bounds")
    p_vb.add_argument("n", type=int)
    p_vb.add_argument("t", type=int)
    p_vb.add_argument("L", type=int)
    p_vb.add_argument("--f", type=int, help="fault parameter of the static bound (default t)")
    p_vb.set_defaults(func=_cmd_verify_bounds)

    p_replay = sub.add_parser("replay", help="summarize a JSONL slot log")
    p_replay.add_argument("trace", type=Path)
    p_replay.set_defaults(func=_cmd_replay)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
