"""Monte Carlo experiment driver with CSV output.

Channel realizations depend only on ``(master_seed, run)``: user positions
and direct links are shared by every sweep value, and the RIS channels of a
smaller surface are a prefix of a larger one. Every algorithm in a
comparison sees the same :class:`ChannelSet` for a given (value, run).
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path
from typing import Any

import numpy as np

from .landscape import analyze_landscape, fdc_label, walk_study
from .optimizers import ALGORITHMS, OptimizerParams, evaluate_without_ris
from .problem import SumRateProblem
from .system import SystemConfig, generate_channels

log = logging.getLogger(__name__)

SWEEP_AXES = ("snr_db", "N", "b", "N_Q")
ALGORITHM_NAMES = ("nga", "ga", "sa", "sequential", "no_ris")

RUN_COLUMNS = ("axis", "value", "run", "algorithm", "sum_rate", "evaluations", "channel_digest")
SUMMARY_COLUMNS = ("axis", "value", "algorithm", "mean_sum_rate", "std_sum_rate", "runs")
LANDSCAPE_COLUMNS = (
    "M", "K", "N", "b", "snr_db", "seed", "realization", "L", "J", "walks", "q",
    "fdc", "fdc_label", "rho1", "corr_length", "corr_length_over_N", "dropped_walks",
    "reference_sum_rate",
)


@dataclass
class ExperimentSpec:
    """One-axis Monte Carlo comparison of algorithms.

    ``params`` holds :class:`OptimizerParams` overrides shared by all
    algorithms (e.g. ``{"max_evaluations": 40000}``).
    """

    scenario: SystemConfig = field(default_factory=SystemConfig)
    axis: str = "N"
    values: list = field(default_factory=lambda: [20, 100, 200])
    algorithms: list = field(default_factory=lambda: list(ALGORITHM_NAMES))
    runs: int = 20
    output_path: str | None = None
    master_seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.scenario, dict):
            self.scenario = SystemConfig.from_dict(self.scenario)
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        unknown = set(self.algorithms) - set(ALGORITHM_NAMES)
        if unknown or not self.algorithms:
            raise ValueError(f"unknown algorithms {sorted(unknown)}; choose from {ALGORITHM_NAMES}")
        if int(self.runs) < 1:
            raise ValueError("runs must be >= 1")
        OptimizerParams(**self.params)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentSpec":
        data = dict(data)
        sweep = data.pop("sweep", None)
        if sweep is not None:
            data["axis"] = sweep["axis"]
            data["values"] = sweep["values"]
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | PathLike) -> "ExperimentSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def point(self, value) -> tuple[SystemConfig, OptimizerParams]:
        """Scenario and optimizer settings at one sweep value."""
        params = dict(self.params)
        scenario = self.scenario.replace(seed=self.master_seed)
        if self.axis == "N_Q":
            params["population_size"] = int(value)
        elif self.axis == "snr_db":
            scenario = scenario.replace(snr_db=float(value))
        else:
            scenario = scenario.replace(**{self.axis: int(value)})
        return scenario, OptimizerParams(**params)


@dataclass
class LandscapeSpec:
    """Grid of (N, b) landscape analyses on one seeded channel realization.

    FDC needs a reference optimum and is only computed for ``b`` in
    ``fdc_b_values`` (all grid values when ``None``).
    """

    scenario: SystemConfig = field(default_factory=SystemConfig)
    N_values: list = field(default_factory=lambda: [20, 80, 140, 200])
    b_values: list = field(default_factory=lambda: [1, 2, 3])
    fdc_b_values: list | None = field(default_factory=lambda: [2])
    samples: int = 10_000
    walks: int = 1000
    walk_length: int = 200
    reference_runs: int = 10
    reference_population: int = 100
    reference_generations: int = 1000
    realization: int = 0
    master_seed: int = 0
    output_path: str | None = None

    def __post_init__(self):
        if isinstance(self.scenario, dict):
            self.scenario = SystemConfig.from_dict(self.scenario)
        if not self.N_values or not self.b_values:
            raise ValueError("landscape grid must not be empty")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LandscapeSpec":
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | PathLike) -> "LandscapeSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _algorithm_seed(master_seed: int, value_index: int, run: int, algorithm: str) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master_seed), value_index, run, ALGORITHM_NAMES.index(algorithm)])


def _run_point(spec: ExperimentSpec, value_index: int, value, run: int) -> list[dict]:
    scenario, params = spec.point(value)
    channels = generate_channels(scenario, run)
    problem = SumRateProblem(channels, scenario)
    digest = channels.digest()
    rows = []
    for name in spec.algorithms:
        if name == "no_ris":
            rate, evaluations = evaluate_without_ris(channels, scenario), 1
        else:
            rng = np.random.default_rng(_algorithm_seed(spec.master_seed, value_index, run, name))
            best, history = ALGORITHMS[name](problem, params, rng)
            rate, evaluations = best.fitness, history[-1].evaluations
        rows.append({
            "axis": spec.axis, "value": value, "run": run, "algorithm": name,
            "sum_rate": float(rate), "evaluations": int(evaluations), "channel_digest": digest,
        })
    log.debug("value=%s run=%d done", value, run)
    return rows


def summarize(rows: list[dict], spec: ExperimentSpec) -> list[dict]:
    """Mean / sample standard deviation / count per (value, algorithm)."""
    out = []
    for value in spec.values:
        for name in spec.algorithms:
            rates = np.array([r["sum_rate"] for r in rows
                              if r["value"] == value and r["algorithm"] == name])
            out.append({
                "axis": spec.axis, "value": value, "algorithm": name,
                "mean_sum_rate": float(rates.mean()),
                "std_sum_rate": float(rates.std(ddof=1)) if rates.size > 1 else 0.0,
                "runs": int(rates.size),
            })
    return out


def run_sweep(spec: ExperimentSpec, n_jobs: int = 1):
    """Run every (value, run, algorithm) of ``spec``.

    Returns the per-run rows and the per-(value, algorithm) summary; both are
    written as CSV when ``spec.output_path`` is set (the summary goes to
    ``<stem>_summary.csv``).
    """
    tasks = [(spec, i, value, run) for i, value in enumerate(spec.values) for run in range(spec.runs)]
    if n_jobs == 1:
        chunks = [_run_point(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            chunks = list(pool.map(_run_point, *zip(*tasks)))
    rows = [row for chunk in chunks for row in chunk]
    summary = summarize(rows, spec)
    if spec.output_path:
        path = Path(spec.output_path)
        write_csv(path, rows, RUN_COLUMNS)
        write_csv(path.with_name(path.stem + "_summary" + path.suffix), summary, SUMMARY_COLUMNS)
    return rows, summary


def run_landscape_study(spec: LandscapeSpec) -> list[dict]:
    """Landscape features over the (N, b) grid; one row per (N, b, q).

    Points without FDC produce a single row with ``q`` and ``fdc`` empty.
    """
    rows = []
    for N in spec.N_values:
        for b in spec.b_values:
            scenario = spec.scenario.replace(N=int(N), b=int(b), seed=spec.master_seed)
            channels = generate_channels(scenario, spec.realization)
            rng = np.random.default_rng(np.random.SeedSequence([int(spec.master_seed), int(N), int(b)]))
            base = {
                "M": scenario.M, "K": scenario.K, "N": scenario.N, "b": scenario.b,
                "snr_db": scenario.snr_db, "seed": spec.master_seed,
                "realization": spec.realization, "L": spec.samples, "J": spec.walk_length,
                "walks": spec.walks,
            }
            with_fdc = spec.fdc_b_values is None or b in spec.fdc_b_values
            if with_fdc:
                report = analyze_landscape(
                    channels, scenario, spec.samples, spec.walks, spec.walk_length, rng,
                    reference_kwargs={"runs": spec.reference_runs,
                                      "population_size": spec.reference_population,
                                      "generations": spec.reference_generations},
                )
                walk = dict(rho1=report.rho1, corr_length=report.correlation_length,
                            corr_length_over_N=report.normalized_correlation_length,
                            dropped_walks=report.dropped_walks)
                for q, value in report.fdc_per_metric.items():
                    rows.append({**base, "q": q, "fdc": value, "fdc_label": fdc_label(value), **walk,
                                 "reference_sum_rate": report.reference_optimum.fitness})
            else:
                w = walk_study(channels, scenario, spec.walks, spec.walk_length, rng)
                rows.append({**base, "q": "", "fdc": "", "fdc_label": "", "rho1": w.rho1,
                             "corr_length": w.correlation_length,
                             "corr_length_over_N": w.normalized_correlation_length,
                             "dropped_walks": w.dropped, "reference_sum_rate": ""})
            log.info("landscape N=%s b=%s done", N, b)
    if spec.output_path:
        write_csv(Path(spec.output_path), rows, LANDSCAPE_COLUMNS)
    return rows


def _format(value) -> str:
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return str(value)


def write_csv(path, rows: list[dict], columns) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(to_csv(rows, columns))


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format(row[c]) for c in columns])
    return buf.getvalue()


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
