"""Niching genetic algorithm and its plain-GA counterpart."""

from __future__ import annotations

import numpy as np

from ..problem import as_fitness
from .budget import EvaluationBudget
from .nbc import SpeciesPartition, min_species_size, nearest_better_clustering
from .operators import _mutate
from .params import Individual, IterationRecord, OptimizerParams


def run_nga(fitness, params: OptimizerParams | None = None, rng=None, dims=None,
            partition_hook=None):
    """Niching GA with nearest-better clustering and a growing species floor.

    Each generation the population is split into species; every individual
    mates with a random member of its own species (uniform crossover, then
    random-resetting mutation) and is replaced by its child only if the
    child is strictly fitter.

    Parameters
    ----------
    fitness : FitnessFunction or callable
        Objective to maximise. Plain callables need ``dims``.
    params : OptimizerParams, optional
    rng : numpy.random.Generator or seed, optional
        Defaults to ``params.seed``.
    dims : tuple (n_elements, bits), optional
    partition_hook : callable, optional
        Called with every :class:`SpeciesPartition` (for diagnostics).

    Returns
    -------
    best : Individual
    history : list of IterationRecord
    """
    return _evolve(fitness, params, rng, dims, niching=True, partition_hook=partition_hook)


def run_ga(fitness, params: OptimizerParams | None = None, rng=None, dims=None):
    """Same loop as :func:`run_nga` with the whole population as one species."""
    return _evolve(fitness, params, rng, dims, niching=False)


def _pick_mates(partition: SpeciesPartition, rng: np.random.Generator, n: int) -> np.ndarray:
    # uniform among the other members of the own species; -1 = no mate
    mates = np.full(n, -1, dtype=np.int64)
    for members in partition.species:
        size = len(members)
        if size < 2:
            continue
        k = rng.integers(size - 1, size=size)
        k += k >= np.arange(size)
        mates[members] = members[k]
    return mates


def _evolve(fitness, params, rng, dims, niching: bool, partition_hook=None):
    params = params or OptimizerParams()
    fit = as_fitness(fitness, dims)
    rng = np.random.default_rng(params.seed if rng is None else rng)
    n_pop, n, b = params.population_size, fit.n_elements, fit.bits
    horizon = params.generation_horizon
    budget = EvaluationBudget(params.max_evaluations, params.stall_tolerance, params.stall_window)

    pop = rng.integers(2**b, size=(n_pop, n))
    values = budget.evaluate(fit, pop)
    history = [IterationRecord(0, budget.evaluations, float(values.max()), 1,
                               float(np.mean(values)))]
    budget.record(float(np.mean(values)))

    t = 0
    while not budget.done:
        if niching and n_pop > 1:
            n_min = min_species_size(min(t, horizon), horizon, params.nmin_base, params.nmin_span)
            partition = nearest_better_clustering(pop, values, n_min, params.phi, b)
        else:
            partition = SpeciesPartition.single(values)
        if partition_hook is not None:
            partition_hook(partition)

        mates = _pick_mates(partition, rng, n_pop)
        swap = rng.random((n_pop, n)) >= params.p_cr
        swap &= (mates >= 0)[:, None]
        children = np.where(swap, pop[np.maximum(mates, 0)], pop)
        children = _mutate(children, params.p_mu, b, rng)

        child_values = budget.evaluate(fit, children)
        better = child_values > values
        pop[better] = children[better]
        values[better] = child_values[better]
        t += 1

        finite = values[np.isfinite(values)]
        mean = float(finite.mean()) if finite.size else -np.inf
        budget.record(mean)
        history.append(IterationRecord(t, budget.evaluations, float(values.max()),
                                       partition.n_species, mean))

    i = int(np.argmax(values))
    return Individual(pop[i].copy(), float(values[i])), history
