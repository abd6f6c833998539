"""Comparison methods: sequential search, simulated annealing, no RIS."""

from __future__ import annotations

import math

import numpy as np

from ..beamforming import beamform
from ..problem import as_fitness
from ..system import ChannelSet, SystemConfig
from .budget import EvaluationBudget
from .operators import _mutate
from .params import Individual, IterationRecord, OptimizerParams


def run_sequential_search(fitness, params: OptimizerParams | None = None, rng=None, dims=None):
    """Coordinate-wise exhaustive search over one element at a time.

    Starting from a random configuration, positions are swept in order and
    each is set to its best value with the others fixed (ties keep the
    current value). By default a single sweep is made; with
    ``params.max_sweeps=None`` sweeps repeat until one makes no change.
    The evaluation budget always applies. Each sweep is one history record.
    """
    params = params or OptimizerParams()
    fit = as_fitness(fitness, dims)
    rng = np.random.default_rng(params.seed if rng is None else rng)
    n, q = fit.n_elements, fit.n_modes
    # stall detection is meaningless here: a sweep without change terminates
    budget = EvaluationBudget(params.max_evaluations, stall_window=None)

    current = rng.integers(q, size=n)
    f_cur = float(budget.evaluate(fit, current[None, :])[0])
    history = [IterationRecord(0, budget.evaluations, f_cur, 1, f_cur)]
    sweep = 0
    while not budget.exhausted:
        changed = False
        for i in range(n):
            if budget.exhausted:
                break
            values = np.delete(np.arange(q), current[i])[: budget.remaining]
            candidates = np.repeat(current[None, :], len(values), axis=0)
            candidates[:, i] = values
            f = budget.evaluate(fit, candidates)
            j = int(np.argmax(f))
            if f[j] > f_cur:
                current = candidates[j]
                f_cur = float(f[j])
                changed = True
        sweep += 1
        history.append(IterationRecord(sweep, budget.evaluations, f_cur, 1, f_cur))
        if not changed or (params.max_sweeps is not None and sweep >= params.max_sweeps):
            break
    return Individual(current.copy(), f_cur), history


def metropolis_accept(delta: float, temperature: float, rng: np.random.Generator) -> bool:
    """Accept improvements always, deteriorations with probability ``exp(delta / T)``."""
    if delta >= 0:
        return True
    if temperature <= 0 or not math.isfinite(delta):
        return False
    return bool(rng.random() < math.exp(delta / temperature))


def run_simulated_annealing(fitness, params: OptimizerParams | None = None, rng=None, dims=None):
    """Simulated annealing with random-resetting proposals and geometric cooling.

    The initial temperature is the fitness standard deviation over
    ``params.sa_t0_samples`` random configurations (these evaluations count
    against the budget) unless ``params.sa_t0`` is given; the search starts
    from the best of those samples. ``params.moves_per_temperature``
    proposals form one iteration, after which ``T <- sa_alpha * T`` and the
    stall rule is checked. A proposal that leaves the configuration
    unchanged has one random position reset instead.
    """
    params = params or OptimizerParams()
    fit = as_fitness(fitness, dims)
    rng = np.random.default_rng(params.seed if rng is None else rng)
    n, b, q = fit.n_elements, fit.bits, fit.n_modes
    budget = EvaluationBudget(params.max_evaluations, params.stall_tolerance, params.stall_window)

    n_samples = min(params.sa_t0_samples, params.max_evaluations) if params.sa_t0 is None else 1
    samples = rng.integers(q, size=(max(n_samples, 1), n))
    sample_values = budget.evaluate(fit, samples)
    if params.sa_t0 is None:
        finite = sample_values[np.isfinite(sample_values)]
        temperature = float(np.std(finite)) if finite.size > 1 else 0.0
        if not temperature > 0:
            temperature = 1e-12
    else:
        temperature = float(params.sa_t0)
    k = int(np.argmax(sample_values))
    current, f_cur = samples[k].copy(), float(sample_values[k])
    best, f_best = current.copy(), f_cur

    history = [IterationRecord(0, budget.evaluations, f_best, 1, f_cur)]
    budget.record(f_cur)
    iteration = 0
    moves = params.moves_per_temperature
    while not budget.done:
        for _ in range(moves):
            if budget.exhausted:
                break
            cand = _mutate(current, params.p_mu, b, rng)
            if np.array_equal(cand, current):
                i = rng.integers(n)
                cand[i] = (cand[i] + rng.integers(1, q)) % q
            f = float(budget.evaluate(fit, cand[None, :])[0])
            if metropolis_accept(f - f_cur, temperature, rng):
                current, f_cur = cand, f
                if f_cur > f_best:
                    best, f_best = current.copy(), f_cur
        temperature *= params.sa_alpha
        iteration += 1
        budget.record(f_cur)
        history.append(IterationRecord(iteration, budget.evaluations, f_best, 1, f_cur))
    return Individual(best, f_best), history


def evaluate_without_ris(channels: ChannelSet, config: SystemConfig) -> float:
    """Sum rate with ZF + water-filling over the direct links only."""
    F = channels.h_d.conj()
    return beamform(F, config.noise_power, config.transmit_power).sum_rate
