"""Fitness landscape features of the sum-rate problem.

Two ruggedness measures are provided: fitness distance correlation (FDC)
against a reference optimum, and the lag-1 autocorrelation of fitness along
random walks together with the derived correlation length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distance import _walk_steps, distances_to
from .exceptions import DegenerateSampleError, UndefinedLengthError
from .optimizers import Individual, OptimizerParams, run_ga
from .problem import SumRateProblem, as_fitness
from .system import ChannelSet, SystemConfig

#: FDC thresholds separating easy / uncorrelated / misleading landscapes.
FDC_EASY = -0.15
FDC_MISLEADING = 0.15


@dataclass
class WalkStudy:
    rho1: float
    correlation_length: float
    normalized_correlation_length: float
    walks: int
    walk_length: int
    dropped: int


@dataclass
class LandscapeReport:
    """Landscape features of one scenario.

    ``fdc_per_metric`` maps the cycle-q exponent (0, 1, 2) to its FDC value.
    """

    fdc_per_metric: dict
    correlation_length: float
    normalized_correlation_length: float
    rho1: float
    sample_count: int
    walk_length: int
    walks: int
    reference_optimum: Individual
    dropped_walks: int = 0
    labels: dict = field(default_factory=dict)


def fdc_label(value: float) -> str:
    if value <= FDC_EASY:
        return "easy"
    if value >= FDC_MISLEADING:
        return "misleading"
    return "uncorrelated"


def fdc(fitnesses, distances) -> float:
    """Fitness distance correlation (Pearson, population standard deviations).

    Raises
    ------
    DegenerateSampleError
        If fewer than two samples are given or either series is constant.
    """
    f = np.asarray(fitnesses, dtype=float)
    s = np.asarray(distances, dtype=float)
    if f.shape != s.shape or f.ndim != 1:
        raise ValueError("fitnesses and distances must be 1-D arrays of equal length")
    if f.size < 2:
        raise DegenerateSampleError("FDC needs at least two samples")
    fc = f - f.mean()
    sc = s - s.mean()
    sd_f = np.sqrt(np.mean(fc**2))
    sd_s = np.sqrt(np.mean(sc**2))
    if sd_f == 0 or sd_s == 0:
        raise DegenerateSampleError("zero variance in fitness or distance sample")
    return float(np.clip(np.mean(fc * sc) / (sd_f * sd_s), -1.0, 1.0))


def autocorrelation(series, nu: int = 1) -> float:
    """Lag-``nu`` autocorrelation of a fitness series from a random walk.

    Mean and (population) variance are taken over the whole series; the
    lagged products are averaged over all ``len(series) - nu`` available
    pairs, so ``autocorrelation(x, 0) == 1``.
    """
    f = np.asarray(series, dtype=float)
    if f.ndim != 1:
        raise ValueError("series must be 1-D")
    if not 0 <= nu < f.size - 1:
        raise ValueError(f"lag must satisfy 0 <= nu < {f.size - 1}, got {nu}")
    fc = f - f.mean()
    var = np.mean(fc**2)
    if not var > 0:
        raise DegenerateSampleError("flat fitness series")
    return float(np.mean(fc[: f.size - nu] * fc[nu:]) / var)


def correlation_length_from_rho(rho1: float) -> float:
    """``-1 / ln|rho1|``; infinite when ``|rho1| >= 1``."""
    a = abs(rho1)
    if a == 0:
        raise UndefinedLengthError("correlation length undefined for rho(1) = 0")
    if a >= 1:
        return math.inf
    return -1.0 / math.log(a)


def correlation_length(series) -> float:
    """Correlation length of a single random-walk fitness series."""
    return correlation_length_from_rho(autocorrelation(series, 1))


def find_reference_optimum(fitness, runs: int = 10, population_size: int = 100,
                           generations: int = 1000, rng=None, dims=None,
                           params: OptimizerParams | None = None) -> Individual:
    """Best result over ``runs`` independent plain-GA runs.

    Each run has a fixed budget of ``generations`` generations (no stall
    stop). ``params`` can override the remaining GA settings.
    """
    fit = as_fitness(fitness, dims)
    rng = np.random.default_rng(rng)
    base = params or OptimizerParams()
    ga_params = base.replace(
        population_size=population_size,
        max_evaluations=population_size * (generations + 1),
        stall_window=None,
    )
    best = None
    for _ in range(runs):
        ind, _hist = run_ga(fit, ga_params, rng)
        if best is None or ind.fitness > best.fitness:
            best = ind
    return best


def fdc_study(channels: ChannelSet, config: SystemConfig, samples: int = 10_000, rng=None,
              reference: Individual | None = None, metrics=(0, 1, 2),
              reference_kwargs: dict | None = None):
    """FDC of ``samples`` uniform configurations for each cycle-q metric.

    Returns
    -------
    values : dict
        ``{q: fdc}``.
    reference : Individual
        The reference optimum used (computed with
        :func:`find_reference_optimum` when not supplied).
    """
    rng = np.random.default_rng(rng)
    problem = SumRateProblem(channels, config)
    if reference is None:
        reference = find_reference_optimum(problem, rng=rng, **(reference_kwargs or {}))
    taus = rng.integers(config.n_modes, size=(samples, config.N))
    f = problem.batch(taus)
    keep = np.isfinite(f)
    values = {q: fdc(f[keep], distances_to(taus[keep], reference.tau, q, config.b)) for q in metrics}
    return values, reference


def walk_fitness(problem, starts: np.ndarray, walk_length: int, rng: np.random.Generator) -> np.ndarray:
    """Fitness along simultaneous random walks; shape ``(walks, walk_length + 1)``."""
    taus = np.array(starts, copy=True)
    series = np.empty((taus.shape[0], walk_length + 1))
    series[:, 0] = problem.batch(taus)
    for j in range(1, walk_length + 1):
        taus = _walk_steps(taus, problem.bits, rng)
        series[:, j] = problem.batch(taus)
    return series


def walk_study(channels: ChannelSet, config: SystemConfig, walks: int = 1000,
               walk_length: int = 200, rng=None, chunk: int = 1000) -> WalkStudy:
    """Average lag-1 autocorrelation over independent random walks.

    Each walk starts at a uniform configuration and takes ``walk_length``
    unit steps (``walk_length + 1`` fitness values). ``rho(1)`` is averaged
    over walks before conversion to a correlation length. Walks with a flat
    or non-finite fitness series are dropped and counted.
    """
    rng = np.random.default_rng(rng)
    problem = SumRateProblem(channels, config)
    rhos = []
    dropped = 0
    for start in range(0, walks, chunk):
        n = min(chunk, walks - start)
        starts = rng.integers(config.n_modes, size=(n, config.N))
        for series in walk_fitness(problem, starts, walk_length, rng):
            if not np.all(np.isfinite(series)):
                dropped += 1
                continue
            try:
                rhos.append(autocorrelation(series, 1))
            except DegenerateSampleError:
                dropped += 1
    if not rhos:
        raise DegenerateSampleError("every random walk was flat")
    rho1 = float(np.mean(rhos))
    length = correlation_length_from_rho(rho1)
    return WalkStudy(rho1, length, length / config.N, walks, walk_length, dropped)


def analyze_landscape(channels: ChannelSet, config: SystemConfig, samples: int = 10_000,
                      walks: int = 1000, walk_length: int = 200, rng=None,
                      reference: Individual | None = None,
                      reference_kwargs: dict | None = None) -> LandscapeReport:
    """FDC for q in {0, 1, 2} plus the random-walk correlation length."""
    rng = np.random.default_rng(rng)
    values, reference = fdc_study(channels, config, samples, rng, reference,
                                  reference_kwargs=reference_kwargs)
    walk = walk_study(channels, config, walks, walk_length, rng)
    return LandscapeReport(
        fdc_per_metric=values,
        correlation_length=walk.correlation_length,
        normalized_correlation_length=walk.normalized_correlation_length,
        rho1=walk.rho1,
        sample_count=samples,
        walk_length=walk_length,
        walks=walks,
        reference_optimum=reference,
        dropped_walks=walk.dropped,
        labels={q: fdc_label(v) for q, v in values.items()},
    )
