"""Cycle-q distances on periodic phase configurations and the unit neighborhood."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidConfigurationError
from .validation import check_bits, check_configuration


def element_moves(a, c, b: int):
    """Minimum number of +/-1 moves between phase indices ``a`` and ``c``.

    Works elementwise on arrays. Range is validated.
    """
    b = check_bits(b)
    a = np.asarray(a)
    c = np.asarray(c)
    q = 2**b
    if np.any((a < 0) | (a >= q) | (c < 0) | (c >= q)):
        raise InvalidConfigurationError(f"phase indices must lie in [0, {q - 1}]")
    diff = np.abs(a - c)
    out = np.minimum(diff, q - diff)
    return int(out) if out.ndim == 0 else out


def _moves(t1: np.ndarray, t2: np.ndarray, q: int) -> np.ndarray:
    diff = np.abs(t1 - t2)
    return np.minimum(diff, q - diff)


def _power(moves: np.ndarray, q: int) -> np.ndarray:
    # 0**0 is taken as 0 so that q=0 counts differing positions
    if q == 0:
        return (moves != 0).astype(np.int64)
    if q == 1:
        return moves
    return moves**q


def cycle_q_distance(t1, t2, q: int, b: int) -> int:
    """Cycle-q distance ``sum_i moves(t1_i, t2_i) ** q`` for ``q`` in {0, 1, 2}."""
    if q not in (0, 1, 2):
        raise ValueError(f"q must be 0, 1 or 2, got {q!r}")
    t1 = check_configuration(t1, b)
    t2 = check_configuration(t2, b)
    if t1.shape != t2.shape:
        raise InvalidConfigurationError(f"length mismatch: {t1.shape[0]} vs {t2.shape[0]}")
    return int(_power(_moves(t1, t2, 2**b), q).sum())


def distances_to(taus, reference, q: int, b: int) -> np.ndarray:
    """Cycle-q distance of every row of ``taus`` to ``reference``."""
    if q not in (0, 1, 2):
        raise ValueError(f"q must be 0, 1 or 2, got {q!r}")
    taus = np.atleast_2d(taus)
    reference = np.asarray(reference)
    if taus.shape[1] != reference.shape[0]:
        raise InvalidConfigurationError("length mismatch")
    return _power(_moves(taus, reference[None, :], 2**b), q).sum(axis=1)


def pairwise_cycle_distances(taus, b: int, q: int = 1) -> np.ndarray:
    """Symmetric matrix of cycle-q distances between the rows of ``taus``."""
    taus = np.asarray(taus)
    moves = _moves(taus[:, None, :], taus[None, :, :], 2**b)
    return _power(moves, q).sum(axis=-1)


def unit_neighbors(t, b: int) -> np.ndarray:
    """All configurations at cycle-1 distance exactly 1 from ``t``.

    Returns a ``(n_neighbors, N)`` array; ``2N`` rows when ``b >= 2`` and
    ``N`` rows when ``b == 1`` (the +1 and -1 moves coincide).
    """
    t = check_configuration(t, b)
    n = t.shape[0]
    q = 2**b
    steps = (1,) if b == 1 else (1, -1)
    rows = []
    for i in range(n):
        for s in steps:
            u = t.copy()
            u[i] = (u[i] + s) % q
            rows.append(u)
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def random_walk_step(t, b: int, rng=None) -> np.ndarray:
    """Uniformly random unit neighbor of ``t``."""
    rng = np.random.default_rng(rng)
    t = check_configuration(t, b)
    return _walk_steps(t[None, :], b, rng)[0]


def _walk_steps(taus: np.ndarray, b: int, rng: np.random.Generator) -> np.ndarray:
    """One random-walk step for each row of ``taus`` (no validation)."""
    n_rows, n = taus.shape
    out = taus.copy()
    pos = rng.integers(n, size=n_rows)
    if b == 1:
        step = np.ones(n_rows, dtype=np.int64)
    else:
        step = rng.integers(2, size=n_rows) * 2 - 1
    rows = np.arange(n_rows)
    out[rows, pos] = (out[rows, pos] + step) % (2**b)
    return out
