from .baselines import (
    evaluate_without_ris,
    metropolis_accept,
    run_sequential_search,
    run_simulated_annealing,
)
from .budget import EvaluationBudget
from .genetic import run_ga, run_nga
from .nbc import SpeciesPartition, min_species_size, nearest_better_clustering
from .operators import random_reset_mutation, uniform_crossover
from .params import Individual, IterationRecord, OptimizerParams

ALGORITHMS = {
    "nga": run_nga,
    "ga": run_ga,
    "sa": run_simulated_annealing,
    "sequential": run_sequential_search,
}

__all__ = [
    "ALGORITHMS",
    "EvaluationBudget",
    "Individual",
    "IterationRecord",
    "OptimizerParams",
    "SpeciesPartition",
    "evaluate_without_ris",
    "metropolis_accept",
    "min_species_size",
    "nearest_better_clustering",
    "random_reset_mutation",
    "run_ga",
    "run_nga",
    "run_sequential_search",
    "run_simulated_annealing",
    "uniform_crossover",
]
