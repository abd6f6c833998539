"""Fitness-function wrappers consumed by optimizers and landscape analysis."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .beamforming import evaluate_batch
from .system import ChannelSet, SystemConfig
from .validation import check_bits, check_positive_int, check_population


class FitnessFunction:
    """A fitness over configurations in ``{0, ..., 2**bits - 1}**n_elements``.

    Parameters
    ----------
    func : callable
        Maps one configuration (1-D int array) to a float, or, when
        ``vectorized`` is true, a 2-D stack of configurations to a 1-D array.
    n_elements, bits : int
        Search-space dimensions.
    vectorized : bool, default False
        Whether ``func`` accepts stacked configurations.
    """

    def __init__(self, func: Callable, n_elements: int, bits: int, vectorized: bool = False):
        self.func = func
        self.n_elements = check_positive_int(n_elements, "n_elements")
        self.bits = check_bits(bits)
        self.vectorized = vectorized

    @property
    def n_modes(self) -> int:
        return 2**self.bits

    def batch(self, taus) -> np.ndarray:
        taus = np.asarray(taus)
        if self.vectorized:
            return np.asarray(self.func(taus), dtype=float)
        return np.array([float(self.func(t)) for t in taus], dtype=float)

    def __call__(self, tau) -> float:
        return float(self.batch(np.asarray(tau)[None, :])[0])


class SumRateProblem(FitnessFunction):
    """Sum-rate fitness of RIS configurations for a fixed channel realization."""

    def __init__(self, channels: ChannelSet, config: SystemConfig):
        if channels.N != config.N or channels.K != config.K or channels.M != config.M:
            raise ValueError(
                f"channel dimensions (M={channels.M}, K={channels.K}, N={channels.N}) "
                f"do not match config (M={config.M}, K={config.K}, N={config.N})"
            )
        self.channels = channels
        self.config = config
        super().__init__(self._evaluate, config.N, config.b, vectorized=True)

    def _evaluate(self, taus):
        return evaluate_batch(self.channels, taus, self.config, check=False)

    def batch(self, taus) -> np.ndarray:
        return super().batch(check_population(taus, self.bits, self.n_elements))


def as_fitness(fitness, dims: tuple[int, int] | None = None) -> FitnessFunction:
    """Coerce ``fitness`` to a :class:`FitnessFunction`.

    Plain callables need ``dims=(n_elements, bits)``.
    """
    if isinstance(fitness, FitnessFunction):
        return fitness
    if dims is None:
        raise TypeError("plain fitness callables need dims=(n_elements, bits)")
    return FitnessFunction(fitness, *dims)
