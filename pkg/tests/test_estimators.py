import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from risnga import SystemConfig, generate_channels
from risnga.estimators import (
    GeneticAlgorithm,
    LandscapeAnalyzer,
    NichingGA,
    SequentialSearch,
    SimulatedAnnealing,
)
from risnga.problem import SumRateProblem


@pytest.fixture(scope="module")
def problem():
    cfg = SystemConfig(N=16, b=2, seed=6)
    return SumRateProblem(generate_channels(cfg, 0), cfg)


@pytest.mark.parametrize("cls", [NichingGA, GeneticAlgorithm, SimulatedAnnealing, SequentialSearch])
def test_fit_predict(problem, cls):
    est = cls(max_evaluations=600, random_state=0).fit(problem)
    assert est.best_tau_.shape == (16,)
    assert est.predict(problem) == pytest.approx(est.best_sum_rate_)
    assert est.score(problem) == est.predict(problem)
    assert est.n_evaluations_ <= 600 + 40
    again = clone(est).fit(problem)
    assert np.array_equal(again.best_tau_, est.best_tau_)


def test_params_protocol():
    est = NichingGA(p_mu=0.05)
    assert est.get_params()["p_mu"] == 0.05
    est.set_params(population_size=20)
    assert clone(est).population_size == 20


def test_unfitted_and_bad_input(problem):
    with pytest.raises(NotFittedError):
        NichingGA().predict(problem)
    with pytest.raises(TypeError):
        NichingGA().fit(np.zeros((3, 3)))


def test_landscape_analyzer(problem):
    est = LandscapeAnalyzer(n_samples=300, n_walks=10, walk_length=40, reference_runs=1,
                            reference_population=10, reference_generations=10, random_state=1)
    est.fit(problem)
    assert set(est.fdc_) == {0, 1, 2}
    assert est.normalized_correlation_length_ == pytest.approx(est.correlation_length_ / 16)
    assert est.reference_optimum_.fitness == pytest.approx(problem(est.reference_optimum_.tau))
