"""scikit-learn style wrappers.

Each optimizer is an estimator whose ``fit`` takes a fitness problem
(usually a :class:`~risnga.problem.SumRateProblem`) and learns the best
RIS configuration::

    est = NichingGA(random_state=0).fit(SumRateProblem(channels, config))
    est.best_tau_, est.best_sum_rate_

Hyper-parameters follow the usual ``get_params`` / ``set_params`` protocol,
so estimators can be cloned and grid-searched.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .landscape import analyze_landscape
from .optimizers import (
    OptimizerParams,
    run_ga,
    run_nga,
    run_sequential_search,
    run_simulated_annealing,
)
from .problem import FitnessFunction, SumRateProblem
from .validation import check_configuration


def _check_problem(X) -> FitnessFunction:
    if not isinstance(X, FitnessFunction):
        raise TypeError(f"expected a FitnessFunction such as SumRateProblem, got {type(X).__name__}")
    return X


class _PhaseOptimizer(BaseEstimator):
    _runner = None

    def _params(self) -> OptimizerParams:
        fields = OptimizerParams.__dataclass_fields__
        kwargs = {k: v for k, v in self.get_params().items() if k in fields}
        return OptimizerParams(**kwargs)

    def fit(self, X, y=None):
        """Search the configuration space of problem ``X``."""
        problem = _check_problem(X)
        rng = np.random.default_rng(self.random_state)
        best, history = type(self)._runner(problem, self._params(), rng)
        self.best_tau_ = best.tau
        self.best_sum_rate_ = best.fitness
        self.history_ = history
        self.n_evaluations_ = history[-1].evaluations
        self.n_iter_ = history[-1].generation
        return self

    def predict(self, X):
        """Sum rate of the learned configuration under problem ``X``."""
        check_is_fitted(self, "best_tau_")
        problem = _check_problem(X)
        return problem(check_configuration(self.best_tau_, problem.bits, problem.n_elements))

    def score(self, X, y=None):
        return self.predict(X)


class NichingGA(_PhaseOptimizer):
    """Niching genetic algorithm (nearest-better clustering species)."""

    _runner = staticmethod(run_nga)

    def __init__(self, population_size=40, p_cr=0.7, p_mu=0.01, max_evaluations=40_000,
                 stall_tolerance=1e-6, stall_window=5, t_max=None, phi=1.0,
                 nmin_base=5, nmin_span=5, random_state=None):
        self.population_size = population_size
        self.p_cr = p_cr
        self.p_mu = p_mu
        self.max_evaluations = max_evaluations
        self.stall_tolerance = stall_tolerance
        self.stall_window = stall_window
        self.t_max = t_max
        self.phi = phi
        self.nmin_base = nmin_base
        self.nmin_span = nmin_span
        self.random_state = random_state


class GeneticAlgorithm(_PhaseOptimizer):
    """Plain GA with one-to-one replacement and panmictic mating."""

    _runner = staticmethod(run_ga)

    def __init__(self, population_size=40, p_cr=0.7, p_mu=0.01, max_evaluations=40_000,
                 stall_tolerance=1e-6, stall_window=5, random_state=None):
        self.population_size = population_size
        self.p_cr = p_cr
        self.p_mu = p_mu
        self.max_evaluations = max_evaluations
        self.stall_tolerance = stall_tolerance
        self.stall_window = stall_window
        self.random_state = random_state


class SimulatedAnnealing(_PhaseOptimizer):
    _runner = staticmethod(run_simulated_annealing)

    def __init__(self, p_mu=0.01, max_evaluations=40_000, stall_tolerance=1e-6, stall_window=5,
                 sa_alpha=0.98, sa_t0=None, sa_t0_samples=100, sa_moves=1, random_state=None):
        self.p_mu = p_mu
        self.max_evaluations = max_evaluations
        self.stall_tolerance = stall_tolerance
        self.stall_window = stall_window
        self.sa_alpha = sa_alpha
        self.sa_t0 = sa_t0
        self.sa_t0_samples = sa_t0_samples
        self.sa_moves = sa_moves
        self.random_state = random_state


class SequentialSearch(_PhaseOptimizer):
    _runner = staticmethod(run_sequential_search)

    def __init__(self, max_evaluations=40_000, max_sweeps=1, random_state=None):
        self.max_evaluations = max_evaluations
        self.max_sweeps = max_sweeps
        self.random_state = random_state


class LandscapeAnalyzer(BaseEstimator):
    """FDC and random-walk correlation length of a sum-rate problem.

    Fitted attributes: ``fdc_`` (dict keyed by cycle-q exponent), ``rho1_``,
    ``correlation_length_``, ``normalized_correlation_length_``,
    ``reference_optimum_`` and the full ``report_``.
    """

    def __init__(self, n_samples=10_000, n_walks=1000, walk_length=200, reference_runs=10,
                 reference_population=100, reference_generations=1000, random_state=None):
        self.n_samples = n_samples
        self.n_walks = n_walks
        self.walk_length = walk_length
        self.reference_runs = reference_runs
        self.reference_population = reference_population
        self.reference_generations = reference_generations
        self.random_state = random_state

    def fit(self, X, y=None):
        if not isinstance(X, SumRateProblem):
            raise TypeError("LandscapeAnalyzer.fit expects a SumRateProblem")
        report = analyze_landscape(
            X.channels, X.config, self.n_samples, self.n_walks, self.walk_length,
            rng=self.random_state,
            reference_kwargs={"runs": self.reference_runs,
                              "population_size": self.reference_population,
                              "generations": self.reference_generations},
        )
        self.report_ = report
        self.fdc_ = dict(report.fdc_per_metric)
        self.rho1_ = report.rho1
        self.correlation_length_ = report.correlation_length
        self.normalized_correlation_length_ = report.normalized_correlation_length
        self.reference_optimum_ = report.reference_optimum
        return self
