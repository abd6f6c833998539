"""Zero-forcing beamforming with water-filling power allocation.

For a given RIS configuration the BS beamformer is
``W = F^H (F F^H)^{-1} P^{1/2}``; the per-user powers ``p_k`` solve the
weighted water-filling problem with loads ``v_k = [(F F^H)^{-1}]_{kk}``
(the diagonal of ``W_hat^H W_hat``). The resulting sum rate is the fitness
used by every optimizer and by the landscape analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SingularChannelError
from .system import ChannelSet, SystemConfig, effective_channel, effective_channels

#: Gram matrices ``F F^H`` with a larger condition number are treated as singular.
MAX_CONDITION = 1e8


@dataclass(frozen=True, eq=False)
class BeamformingResult:
    W: np.ndarray
    W_hat: np.ndarray
    p: np.ndarray
    v: np.ndarray
    delta: float
    sum_rate: float


def zf_directions(F, max_condition: float = MAX_CONDITION) -> np.ndarray:
    """Zero-forcing directions ``W_hat = F^H (F F^H)^{-1}`` (``M x K``).

    Raises
    ------
    SingularChannelError
        If ``F`` has more rows than columns or ``F F^H`` is ill conditioned.
    """
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    K, M = F.shape
    if K > M:
        raise SingularChannelError(f"zero forcing needs M >= K, got F of shape {F.shape}")
    gram = F @ F.conj().T
    eig = np.linalg.eigvalsh(gram)
    if not eig[0] > 0 or eig[-1] / eig[0] > max_condition:
        raise SingularChannelError("effective channel is rank deficient")
    return F.conj().T @ np.linalg.inv(gram)


def _water_level(loads: np.ndarray, p_total) -> np.ndarray:
    """Water level ``1/delta`` for each row of ``loads`` (= ``v_k sigma^2``).

    Exact active-set solution: with loads sorted ascending, the optimal
    active set is a prefix, and the level for a prefix of size ``m`` is
    ``(P_T + sum of its loads) / m``. The largest prefix whose level still
    exceeds its own largest load is the optimum.
    """
    a = np.sort(loads, axis=-1)
    m = np.arange(1, a.shape[-1] + 1)
    levels = (np.asarray(p_total)[..., None] + np.cumsum(a, axis=-1)) / m
    active = levels > a
    # active is a prefix of True values; count them
    n_active = active.sum(axis=-1)
    return np.take_along_axis(levels, (n_active - 1)[..., None], axis=-1)[..., 0]


def water_filling(v, sigma2: float, p_total: float) -> tuple[np.ndarray, float]:
    """Water-filling power allocation.

    Parameters
    ----------
    v : array-like, shape (K,)
        Positive per-user loads (diagonal of ``W_hat^H W_hat``).
    sigma2 : float
        Noise power.
    p_total : float
        Transmit power budget.

    Returns
    -------
    p : ndarray, shape (K,)
        Powers ``p_k = max(1/delta - v_k sigma2, 0) / v_k``.
    delta : float
        Normaliser satisfying ``sum_k max(1/delta - v_k sigma2, 0) = p_total``.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or np.any(v <= 0):
        raise ValueError("loads v must be a 1-D array of positive values")
    if sigma2 <= 0 or p_total <= 0:
        raise ValueError("sigma2 and p_total must be positive")
    level = float(_water_level(v * sigma2, p_total))
    p = np.maximum(level - v * sigma2, 0.0) / v
    return p, 1.0 / level


def evaluate_configuration(channels: ChannelSet, tau, config: SystemConfig) -> BeamformingResult:
    """Full beamforming solution and sum rate for one RIS configuration."""
    F = effective_channel(channels, tau, config.b)
    return beamform(F, config.noise_power, config.transmit_power)


def beamform(F, sigma2: float, p_total: float) -> BeamformingResult:
    """ZF + water-filling for a fixed effective channel ``F``."""
    W_hat = zf_directions(F)
    v = np.real(np.einsum("mk,mk->k", W_hat.conj(), W_hat))
    p, delta = water_filling(v, sigma2, p_total)
    W = W_hat * np.sqrt(p)
    rate = float(np.sum(np.log2(1.0 + p / sigma2)))
    return BeamformingResult(W=W, W_hat=W_hat, p=p, v=v, delta=delta, sum_rate=rate)


def sum_rate_from_channels(F: np.ndarray, sigma2: float, p_total: float,
                           max_condition: float = MAX_CONDITION) -> np.ndarray:
    """Vectorised ZF/water-filling sum rate for stacked channels ``(B, K, M)``.

    Singular channels get ``-inf``.
    """
    gram = F @ np.swapaxes(F.conj(), -1, -2)
    eig, U = np.linalg.eigh(gram)
    bad = ~(eig[:, 0] > 0) | (eig[:, -1] > max_condition * eig[:, 0])
    eig = np.where(bad[:, None], 1.0, eig)
    # diag((F F^H)^{-1}) from the eigendecomposition
    v = np.einsum("bki,bi->bk", np.abs(U) ** 2, 1.0 / eig)
    loads = v * sigma2
    level = _water_level(loads, p_total)
    gains = np.maximum(level[:, None] / loads, 1.0)
    rates = np.log2(gains).sum(axis=1)
    rates[bad] = -np.inf
    return rates


def evaluate_batch(channels: ChannelSet, taus, config: SystemConfig, check: bool = True) -> np.ndarray:
    """Sum rate of each configuration (row) of ``taus``; ``-inf`` when singular."""
    F = effective_channels(channels, taus, config.b, check=check)
    return sum_rate_from_channels(F, config.noise_power, config.transmit_power)
