"""Command line entry point: ``risnga {optimize,sweep,landscape}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .harness import (
    ExperimentSpec,
    LANDSCAPE_COLUMNS,
    LandscapeSpec,
    run_landscape_study,
    run_sweep,
    to_csv,
)
from .optimizers import ALGORITHMS, OptimizerParams
from .problem import SumRateProblem
from .system import SystemConfig, generate_channels

HISTORY_COLUMNS = ("generation", "evaluations", "best_sum_rate", "species_count")


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_optimize(args) -> int:
    data = _load_json(args.spec) if args.spec else {}
    scenario = SystemConfig.from_dict(data.get("scenario", data))
    if args.seed is not None:
        scenario = scenario.replace(seed=args.seed)
    overrides = {"seed": args.seed if args.seed is not None else scenario.seed}
    if args.budget is not None:
        overrides["max_evaluations"] = args.budget
    params = OptimizerParams(**{**data.get("params", {}), **overrides})

    channels = generate_channels(scenario, args.realization)
    best, history = ALGORITHMS[args.algorithm](SumRateProblem(channels, scenario), params)
    rows = [r._asdict() for r in history]
    _emit(to_csv(rows, HISTORY_COLUMNS), args.out)
    print(f"{args.algorithm}: best sum rate {best.fitness:.6f} bits/s/Hz after "
          f"{history[-1].evaluations} evaluations", file=sys.stderr)
    print("configuration: " + " ".join(map(str, best.tau)), file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    spec = ExperimentSpec.from_json(args.spec)
    if args.runs is not None:
        spec.runs = args.runs
    if args.seed is not None:
        spec.master_seed = args.seed
    if args.budget is not None:
        spec.params = {**spec.params, "max_evaluations": args.budget}
    if args.out:
        spec.output_path = args.out
    if not spec.output_path:
        raise ValueError("sweep needs an output path (--out or output_path in the experiment JSON)")
    _, summary = run_sweep(spec, n_jobs=args.jobs)
    for row in summary:
        print(f"{row['axis']}={row['value']} {row['algorithm']:>10}: "
              f"{row['mean_sum_rate']:.4f} +- {row['std_sum_rate']:.4f} ({row['runs']} runs)",
              file=sys.stderr)
    return 0


def cmd_landscape(args) -> int:
    spec = LandscapeSpec.from_dict(_load_json(args.spec)) if args.spec else LandscapeSpec()
    for name in ("samples", "walks", "walk_length"):
        if getattr(args, name) is not None:
            setattr(spec, name, getattr(args, name))
    if args.seed is not None:
        spec.master_seed = args.seed
    out, spec.output_path = args.out or spec.output_path, None
    rows = run_landscape_study(spec)
    _emit(to_csv(rows, LANDSCAPE_COLUMNS), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="risnga", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="optimize one channel realization; CSV history")
    p.add_argument("--spec", help="scenario JSON (SystemConfig fields, or {scenario, params})")
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="nga")
    p.add_argument("--realization", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="maximum sum-rate evaluations")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="Monte Carlo comparison along one axis")
    p.add_argument("--spec", required=True, help="experiment JSON")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="per-run CSV; summary goes to <stem>_summary.csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("landscape", help="FDC and correlation length over an (N, b) grid")
    p.add_argument("--spec", help="landscape JSON")
    p.add_argument("--samples", type=int)
    p.add_argument("--walks", type=int)
    p.add_argument("--walk-length", dest="walk_length", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_landscape)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001
        print(f"risnga: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
