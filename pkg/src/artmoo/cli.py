"""Command-line interface: batch experiments and reference-front export."""

from __future__ import annotations

import argparse
import sys

from .bench import ConfigError, ExperimentConfig, RunFailure, run_experiment, summary_table
from .problems import available_problems, front_to_csv, make_problem, reference_front


def _parse_problems(text: str) -> list:
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            name, m = chunk.split(":")
            pairs.append((name.strip().lower(), int(m)))
        except ValueError as exc:
            raise ConfigError(f"bad problem spec {chunk!r}; expected name:M") from exc
    return pairs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artmoo")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a batch of optimization runs")
    run.add_argument("--config", help="JSON experiment config")
    run.add_argument("--out", help="output directory")
    run.add_argument("--runs", type=int, help="independent runs per cell")
    run.add_argument("--seed", type=int, help="base seed; run i uses seed + i")
    run.add_argument("--workers", type=int, help="parallel worker processes")
    run.add_argument("--problems", help="comma list of name:M, e.g. maf1:5,maf7:3")
    run.add_argument("--algos", help="comma list from: rvea-ca, rvea")

    front = sub.add_parser("front", help="export a reference front as CSV")
    front.add_argument("--problem", required=True, choices=available_problems())
    front.add_argument("--objectives", type=int, required=True)
    front.add_argument("--count", type=int, default=1000)
    front.add_argument("--out", required=True, help="CSV path")
    return parser


def _load_config(args) -> ExperimentConfig:
    if args.config:
        config = ExperimentConfig.from_json(args.config)
    else:
        config = ExperimentConfig()
    if args.out is not None:
        config.out = args.out
    if args.runs is not None:
        config.runs = args.runs
    if args.seed is not None:
        config.seed = args.seed
    if args.workers is not None:
        config.workers = args.workers
    if args.problems is not None:
        config.problems = _parse_problems(args.problems)
    if args.algos is not None:
        config.algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    config.validate()
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "front":
        try:
            problem = make_problem(args.problem, args.objectives)
            front_to_csv(reference_front(problem, args.count), args.out)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"wrote {args.out}")
        return 0
    try:
        config = _load_config(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        records = run_experiment(config)
    except RunFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(summary_table(records, config.reference_algorithm), end="")
    print(f"wrote {len(records)} runs to {config.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
