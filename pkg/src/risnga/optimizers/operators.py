"""Variation operators on integer phase configurations."""

from __future__ import annotations

import numpy as np

from ..exceptions import InvalidConfigurationError
from ..validation import check_bits, check_probability


def uniform_crossover(a, c, p_cr: float, rng=None, draws=None):
    """Uniform crossover of two parents.

    Position ``i`` is exchanged between the parents when its uniform draw is
    not less than ``p_cr``.

    Parameters
    ----------
    a, c : array-like of int
        Parent configurations of equal length.
    p_cr : float
        Crossover threshold in [0, 1].
    rng : numpy.random.Generator or seed, optional
        Source of the per-position draws.
    draws : array-like of float, optional
        Explicit per-position draws in [0, 1); overrides ``rng``.

    Returns
    -------
    child1, child2 : ndarray
        ``child1`` keeps ``a``'s non-exchanged entries.
    """
    a = np.asarray(a)
    c = np.asarray(c)
    if a.shape != c.shape:
        raise InvalidConfigurationError(f"parent length mismatch: {a.shape} vs {c.shape}")
    p_cr = check_probability(p_cr, "p_cr")
    if draws is None:
        draws = np.random.default_rng(rng).random(a.shape)
    swap = np.asarray(draws) >= p_cr
    return np.where(swap, c, a), np.where(swap, a, c)


def random_reset_mutation(t, p_mu: float, b: int, rng=None) -> np.ndarray:
    """Reset each position with probability ``p_mu`` to one of the other ``2**b - 1`` values."""
    rng = np.random.default_rng(rng)
    return _mutate(np.asarray(t), check_probability(p_mu, "p_mu"), check_bits(b), rng)


def _mutate(taus: np.ndarray, p_mu: float, b: int, rng: np.random.Generator) -> np.ndarray:
    # works for a single configuration or a stacked population
    out = taus.copy()
    mask = rng.random(taus.shape) < p_mu
    n_hit = int(mask.sum())
    if n_hit:
        q = 2**b
        out[mask] = (out[mask] + rng.integers(1, q, size=n_hit)) % q
    return out
