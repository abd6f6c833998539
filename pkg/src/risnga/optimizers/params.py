from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..validation import check_positive_int, check_probability


@dataclass(frozen=True)
class OptimizerParams:
    """Settings shared by all discrete optimizers.

    ``t_max`` is the generation horizon of the species-size schedule; when
    ``None`` it is derived from the evaluation budget.

    Simulated annealing uses the ``sa_*`` fields. With ``sa_t0=None`` the
    initial temperature is the fitness standard deviation over
    ``sa_t0_samples`` random configurations. Each temperature step makes
    ``sa_moves`` proposals.

    ``max_sweeps`` limits the passes of sequential search; ``None`` keeps
    sweeping until no position changes.
    """

    population_size: int = 40
    p_cr: float = 0.7
    p_mu: float = 0.01
    max_evaluations: int = 40_000
    stall_tolerance: float = 1e-6
    stall_window: int | None = 5
    t_max: int | None = None
    phi: float = 1.0
    nmin_base: float = 5
    nmin_span: float = 5
    sa_alpha: float = 0.98
    sa_t0: float | None = None
    sa_t0_samples: int = 100
    sa_moves: int = 1
    max_sweeps: int | None = 1
    seed: int | None = None

    def __post_init__(self):
        check_positive_int(self.population_size, "population_size")
        check_positive_int(self.max_evaluations, "max_evaluations")
        check_probability(self.p_cr, "p_cr")
        check_probability(self.p_mu, "p_mu")
        if self.stall_window is not None:
            check_positive_int(self.stall_window, "stall_window")
        if self.t_max is not None:
            check_positive_int(self.t_max, "t_max")
        if self.max_sweeps is not None:
            check_positive_int(self.max_sweeps, "max_sweeps")
        check_positive_int(self.sa_moves, "sa_moves")
        if not 0 < self.sa_alpha <= 1:
            raise ValueError("sa_alpha must lie in (0, 1]")
        if self.phi < 0:
            raise ValueError("phi must be nonnegative")

    @property
    def generation_horizon(self) -> int:
        if self.t_max is not None:
            return self.t_max
        return max(1, -(-(self.max_evaluations - self.population_size) // self.population_size))

    @property
    def moves_per_temperature(self) -> int:
        return self.sa_moves

    def replace(self, **changes) -> "OptimizerParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Individual:
    tau: np.ndarray
    fitness: float


class IterationRecord(NamedTuple):
    """One row of an optimizer history.

    ``current_fitness`` is the population mean for population methods and
    the current (accepted) solution for single-solution methods.
    """

    generation: int
    evaluations: int
    best_sum_rate: float
    species_count: int
    current_fitness: float
