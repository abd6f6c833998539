"""Input validation helpers shared by the public API."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import InvalidConfigurationError


def check_bits(b) -> int:
    if not isinstance(b, numbers.Integral) or b < 1:
        raise InvalidConfigurationError(f"quantization bits must be an integer >= 1, got {b!r}")
    return int(b)


def check_configuration(tau, b: int, n_elements: int | None = None) -> np.ndarray:
    """Return ``tau`` as a 1-D int64 array after range and length checks.

    Parameters
    ----------
    tau : array-like of int
        Phase indices, each in ``{0, ..., 2**b - 1}``.
    b : int
        Quantization bits.
    n_elements : int, optional
        Expected length. Not checked when omitted.
    """
    b = check_bits(b)
    arr = np.asarray(tau)
    if arr.ndim != 1:
        raise InvalidConfigurationError(f"configuration must be 1-D, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InvalidConfigurationError("configuration entries must be integers")
    arr = arr.astype(np.int64)
    if n_elements is not None and arr.shape[0] != n_elements:
        raise InvalidConfigurationError(
            f"configuration length {arr.shape[0]} != number of elements {n_elements}"
        )
    if arr.size and (arr.min() < 0 or arr.max() >= 2**b):
        raise InvalidConfigurationError(f"configuration entries must lie in [0, {2**b - 1}]")
    return arr


def check_population(taus, b: int, n_elements: int | None = None) -> np.ndarray:
    """2-D analogue of :func:`check_configuration` (one configuration per row)."""
    arr = np.asarray(taus)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise InvalidConfigurationError(f"population must be 2-D, got shape {arr.shape}")
    arr = arr.astype(np.int64)
    if n_elements is not None and arr.shape[1] != n_elements:
        raise InvalidConfigurationError(
            f"configuration length {arr.shape[1]} != number of elements {n_elements}"
        )
    if arr.size and (arr.min() < 0 or arr.max() >= 2 ** check_bits(b)):
        raise InvalidConfigurationError(f"configuration entries must lie in [0, {2**b - 1}]")
    return arr


def check_probability(p, name: str) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_positive_int(n, name: str) -> int:
    if not isinstance(n, numbers.Integral) or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")
    return int(n)
