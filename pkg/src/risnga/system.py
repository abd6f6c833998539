"""Downlink RIS-aided MU-MISO system model.

Channel layout used throughout the package (rows are users):

* ``h_d``: ``(K, M)`` direct BS -> user channels, row ``k`` is ``h_{d,k}``.
* ``G``: ``(N, M)`` BS -> RIS channel.
* ``h_r``: ``(K, N)`` RIS -> user channels, row ``k`` is ``h_{r,k}``.

The effective channel of user ``k`` is the row vector
``f_k = h_{d,k}^H + h_{r,k}^H diag(theta) G`` so that ``F`` is ``(K, M)``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from os import PathLike
from typing import Any

import numpy as np

from .exceptions import InvalidConfigurationError
from .validation import check_bits, check_configuration, check_population


@dataclass(frozen=True)
class PathLoss:
    """Log-distance path-loss law ``intercept_db + slope_db * log10(d)``."""

    intercept_db: float
    slope_db: float

    def __call__(self, d):
        return self.intercept_db + self.slope_db * np.log10(d)

    @classmethod
    def coerce(cls, value) -> "PathLoss":
        if isinstance(value, PathLoss):
            return value
        if isinstance(value, dict):
            return cls(float(value["intercept_db"]), float(value["slope_db"]))
        intercept, slope = value
        return cls(float(intercept), float(slope))

    def to_json(self) -> list:
        return [self.intercept_db, self.slope_db]


SNR_REFERENCES = ("direct", "transmit")


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters. Defaults reproduce the desk-scale reference scenario.

    Path-loss laws are :class:`PathLoss` instances; in JSON they are written
    as ``[intercept_db, slope_db]`` pairs.

    ``snr_reference`` fixes what ``snr_db`` measures. With ``"transmit"`` it
    is the raw ratio ``P_T / sigma^2``. With ``"direct"`` (default) it is the
    mean received SNR over the direct link at the centre of the user disk,
    ``P_T * 10**(-PL_direct(d_c)/10) / sigma^2``. The raw ratio puts every
    user more than 100 dB below the noise floor for the default geometry.
    """

    M: int = 4
    K: int = 4
    N: int = 100
    b: int = 2
    snr_db: float = 2.0
    bandwidth_hz: float = 180e3
    noise_psd_dbm_hz: float = -170.0
    bs_pos: tuple = (0.0, 0.0)
    ris_pos: tuple = (100.0, 0.0)
    user_center: tuple = (100.0, 30.0)
    user_radius: float = 10.0
    pl_ris_db: PathLoss = field(default_factory=lambda: PathLoss(20.0, 20.0))
    pl_direct_db: PathLoss = field(default_factory=lambda: PathLoss(32.6, 36.7))
    seed: int = 0
    snr_reference: str = "direct"

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        for name in ("bs_pos", "ris_pos", "user_center"):
            value = tuple(float(x) for x in getattr(self, name))
            if len(value) != 2:
                raise InvalidConfigurationError(f"{name} must be a 2-D coordinate")
            set_(name, value)
        set_("pl_ris_db", PathLoss.coerce(self.pl_ris_db))
        set_("pl_direct_db", PathLoss.coerce(self.pl_direct_db))
        for name in ("M", "K", "N"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidConfigurationError(f"{name} must be a positive integer, got {value!r}")
            set_(name, int(value))
        check_bits(self.b)
        if self.snr_reference not in SNR_REFERENCES:
            raise InvalidConfigurationError(
                f"snr_reference must be one of {SNR_REFERENCES}, got {self.snr_reference!r}"
            )
        if self.M < self.K:
            raise InvalidConfigurationError(f"zero forcing needs M >= K (M={self.M}, K={self.K})")
        if self.user_radius < 0 or self.bandwidth_hz <= 0:
            raise InvalidConfigurationError("user_radius must be >= 0 and bandwidth_hz > 0")
        if np.allclose(self.bs_pos, self.ris_pos):
            raise InvalidConfigurationError("BS and RIS must not coincide")
        # closest approach of the user disk to BS / RIS must stay positive
        for anchor in (self.bs_pos, self.ris_pos):
            if np.hypot(*np.subtract(self.user_center, anchor)) <= self.user_radius:
                raise InvalidConfigurationError("user disk must not contain the BS or the RIS")

    @property
    def noise_power(self) -> float:
        """Noise power sigma^2 in watts."""
        return noise_power_w(self.noise_psd_dbm_hz, self.bandwidth_hz)

    @property
    def reference_loss_db(self) -> float:
        """Path loss (dB) separating ``snr_db`` from the raw ``P_T / sigma^2``."""
        if self.snr_reference == "transmit":
            return 0.0
        d = float(np.hypot(*np.subtract(self.user_center, self.bs_pos)))
        return float(self.pl_direct_db(d))

    @property
    def transmit_power(self) -> float:
        """Power budget P_T in watts."""
        return self.noise_power * 10.0 ** ((self.snr_db + self.reference_loss_db) / 10.0)

    @property
    def n_modes(self) -> int:
        return 2**self.b

    def replace(self, **changes) -> "SystemConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["pl_ris_db"] = self.pl_ris_db.to_json()
        out["pl_direct_db"] = self.pl_direct_db.to_json()
        for name in ("bs_pos", "ris_pos", "user_center"):
            out[name] = list(out[name])
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SystemConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidConfigurationError(f"unknown SystemConfig fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | PathLike) -> "SystemConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def noise_power_w(noise_psd_dbm_hz: float, bandwidth_hz: float) -> float:
    return 10.0 ** ((noise_psd_dbm_hz + 10.0 * np.log10(bandwidth_hz) - 30.0) / 10.0)


def amplitude_from_db(pl_db):
    """Amplitude scale ``sqrt(10**(-PL/10))`` for a path loss in dB."""
    return np.sqrt(10.0 ** (-np.asarray(pl_db, dtype=float) / 10.0))


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """One channel realization (see module docstring for the layout)."""

    h_d: np.ndarray
    G: np.ndarray
    h_r: np.ndarray
    user_pos: np.ndarray | None = None

    def __post_init__(self):
        h_d = np.atleast_2d(np.array(self.h_d, dtype=complex))
        G = np.atleast_2d(np.array(self.G, dtype=complex))
        h_r = np.atleast_2d(np.array(self.h_r, dtype=complex))
        K, M = h_d.shape
        N = G.shape[0]
        if G.shape[1] != M or h_r.shape != (K, N):
            raise InvalidConfigurationError(
                f"inconsistent channel shapes h_d{h_d.shape}, G{G.shape}, h_r{h_r.shape}"
            )
        for arr in (h_d, G, h_r):
            if not np.all(np.isfinite(arr)):
                raise InvalidConfigurationError("channel entries must be finite")
            arr.setflags(write=False)
        object.__setattr__(self, "h_d", h_d)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "h_r", h_r)

    @property
    def M(self) -> int:
        return self.h_d.shape[1]

    @property
    def K(self) -> int:
        return self.h_d.shape[0]

    @property
    def N(self) -> int:
        return self.G.shape[0]

    def without_ris(self) -> "ChannelSet":
        """Same direct links with the reflected path removed."""
        return ChannelSet(self.h_d, self.G, np.zeros_like(self.h_r), self.user_pos)

    def digest(self) -> str:
        h = hashlib.sha256()
        for arr in (self.h_d, self.G, self.h_r):
            h.update(np.ascontiguousarray(arr).tobytes())
        return h.hexdigest()[:16]


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    z = rng.standard_normal((*shape, 2))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)


def generate_channels(config: SystemConfig, realization: int = 0) -> ChannelSet:
    """Draw one Rayleigh-faded channel realization for ``config``.

    Each link group gets its own RNG stream derived from
    ``(config.seed, realization)``, so user positions and direct links do not
    depend on ``N`` or ``b``. RIS channels are drawn element-major, which
    makes the first ``N`` elements of a larger surface identical to a
    smaller one with the same seed.
    """
    root = np.random.SeedSequence([int(config.seed), int(realization)])
    pos_ss, direct_ss, bs_ris_ss, ris_user_ss = root.spawn(4)

    rng = np.random.default_rng(pos_ss)
    radius = config.user_radius * np.sqrt(rng.random(config.K))
    angle = 2.0 * np.pi * rng.random(config.K)
    user_pos = np.asarray(config.user_center) + np.column_stack(
        (radius * np.cos(angle), radius * np.sin(angle))
    )

    bs = np.asarray(config.bs_pos)
    ris = np.asarray(config.ris_pos)
    d_bs_user = np.linalg.norm(user_pos - bs, axis=1)
    d_ris_user = np.linalg.norm(user_pos - ris, axis=1)
    d_bs_ris = float(np.linalg.norm(ris - bs))

    h_d = _complex_gaussian(np.random.default_rng(direct_ss), (config.K, config.M))
    h_d *= amplitude_from_db(config.pl_direct_db(d_bs_user))[:, None]

    G = _complex_gaussian(np.random.default_rng(bs_ris_ss), (config.N, config.M))
    G *= amplitude_from_db(config.pl_ris_db(d_bs_ris))

    h_r = _complex_gaussian(np.random.default_rng(ris_user_ss), (config.N, config.K)).T
    h_r = h_r * amplitude_from_db(config.pl_ris_db(d_ris_user))[:, None]

    return ChannelSet(h_d=h_d, G=G, h_r=h_r, user_pos=user_pos)


def phase_shifts(tau, b: int) -> np.ndarray:
    """Unit-modulus reflection coefficients ``exp(j 2 pi tau / 2**b)``.

    Accepts a single configuration or a 2-D stack; no range checks.
    """
    return np.exp(1j * (2.0 * np.pi / 2**b) * np.asarray(tau))


def phase_matrix(tau, b: int) -> np.ndarray:
    """Diagonal reflection matrix Theta for configuration ``tau``."""
    tau = check_configuration(tau, b)
    return np.diag(phase_shifts(tau, b))


def effective_channel(channels: ChannelSet, tau, b: int) -> np.ndarray:
    """Effective channel matrix ``F`` (``K x M``) for one configuration."""
    tau = check_configuration(tau, b, channels.N)
    theta = phase_shifts(tau, b)
    return channels.h_d.conj() + (channels.h_r.conj() * theta) @ channels.G


def effective_channels(channels: ChannelSet, taus, b: int, check: bool = True) -> np.ndarray:
    """Stacked effective channels ``(B, K, M)`` for ``B`` configurations."""
    if check:
        taus = check_population(taus, b, channels.N)
    theta = phase_shifts(taus, b)
    cascaded = (channels.h_r.conj()[None, :, :] * theta[:, None, :]) @ channels.G
    return channels.h_d.conj()[None, :, :] + cascaded


def sinr(F, W, sigma2: float) -> np.ndarray:
    """Per-user SINR for effective channel ``F`` (K x M) and beamformer ``W`` (M x K)."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    gains = np.abs(np.asarray(F) @ np.asarray(W)) ** 2
    signal = np.diag(gains)
    interference = gains.sum(axis=1) - signal
    return signal / (interference + sigma2)


def sum_rate(F, W, sigma2: float) -> float:
    """Sum of ``log2(1 + SINR_k)`` over users, in bits/s/Hz."""
    return float(np.sum(np.log2(1.0 + sinr(F, W, sigma2))))
