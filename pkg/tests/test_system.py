import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risnga import ChannelSet, InvalidConfigurationError, SystemConfig, generate_channels
from risnga.system import (
    PathLoss,
    amplitude_from_db,
    effective_channel,
    effective_channels,
    noise_power_w,
    phase_matrix,
    sinr,
    sum_rate,
)

from .conftest import random_channels


def test_bs_ris_path_loss_amplitude():
    pl = PathLoss(20, 20)(100.0)
    assert pl == pytest.approx(60.0)
    # 60 dB power loss -> 1e-6 power -> 1e-3 amplitude
    assert amplitude_from_db(pl) == pytest.approx(1e-3, rel=1e-12)
    assert amplitude_from_db(30.0) ** 2 == pytest.approx(1e-3, rel=1e-12)


def test_noise_power():
    # -170 dBm/Hz + 10 log10(180 kHz) - 30 = -147.447 dBW
    sigma2 = noise_power_w(-170.0, 180e3)
    assert 10 * math.log10(sigma2) + 30 == pytest.approx(-117.447, abs=1e-3)
    assert sigma2 == pytest.approx(1.8e-15, rel=1e-12)
    assert SystemConfig().noise_power == pytest.approx(1.8e-15, rel=1e-12)


def test_transmit_power_reference_modes():
    raw = SystemConfig(snr_db=2.0, snr_reference="transmit")
    assert raw.transmit_power == pytest.approx(raw.noise_power * 10**0.2)
    direct = SystemConfig(snr_db=2.0)
    d = math.hypot(100.0, 30.0)
    expected = direct.noise_power * 10 ** ((2.0 + 32.6 + 36.7 * math.log10(d)) / 10)
    assert direct.transmit_power == pytest.approx(expected, rel=1e-12)


def test_generate_channels_deterministic():
    cfg = SystemConfig(N=16, seed=3)
    a = generate_channels(cfg, 5)
    b = generate_channels(cfg, 5)
    for name in ("h_d", "G", "h_r", "user_pos"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    c = generate_channels(cfg, 6)
    assert not np.array_equal(a.G, c.G)


def test_generate_channels_shapes_and_disk():
    cfg = SystemConfig(M=5, K=3, N=7)
    ch = generate_channels(cfg, 0)
    assert ch.h_d.shape == (3, 5) and ch.G.shape == (7, 5) and ch.h_r.shape == (3, 7)
    r = np.linalg.norm(ch.user_pos - np.array(cfg.user_center), axis=1)
    assert np.all(r <= cfg.user_radius)


def test_ris_channels_nested_across_surface_size():
    small = generate_channels(SystemConfig(N=20, seed=9), 1)
    large = generate_channels(SystemConfig(N=100, seed=9), 1)
    assert np.array_equal(small.h_d, large.h_d)
    assert np.array_equal(small.G, large.G[:20])
    assert np.array_equal(small.h_r, large.h_r[:, :20])


def test_channel_power_statistics():
    cfg = SystemConfig(M=1, K=1, N=1, seed=11)
    power = np.mean([abs(generate_channels(cfg, r).G[0, 0]) ** 2 for r in range(10_000)])
    expected = 10 ** (-cfg.pl_ris_db(100.0) / 10)
    assert abs(power / expected - 1) < 0.05


def test_config_validation():
    with pytest.raises(InvalidConfigurationError):
        SystemConfig(M=2, K=3)
    with pytest.raises(InvalidConfigurationError):
        SystemConfig(b=0)
    with pytest.raises(InvalidConfigurationError):
        SystemConfig(N=0)
    with pytest.raises(InvalidConfigurationError):
        SystemConfig(snr_reference="bogus")


def test_config_json_roundtrip(tmp_path):
    cfg = SystemConfig(M=6, K=2, N=33, b=3, snr_db=-4.5, seed=99)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert SystemConfig.from_json(path) == cfg
    with pytest.raises(InvalidConfigurationError):
        SystemConfig.from_dict({"M": 4, "bogus": 1})


def test_phase_matrix_examples():
    assert np.allclose(phase_matrix([0, 1], 1), np.diag([1, -1]))
    assert phase_matrix([1], 2)[0, 0] == pytest.approx(1j)
    assert np.allclose(phase_matrix([0, 0, 0], 2), np.eye(3))
    with pytest.raises(InvalidConfigurationError):
        phase_matrix([4], 2)
    with pytest.raises(InvalidConfigurationError):
        phase_matrix([-1], 1)


@given(st.integers(1, 4), st.data())
def test_phase_matrix_unitary(b, data):
    tau = data.draw(st.lists(st.integers(0, 2**b - 1), min_size=1, max_size=12))
    theta = phase_matrix(tau, b)
    assert np.allclose(theta @ theta.conj().T, np.eye(len(tau)))


def test_effective_channel_no_reflection_independent_of_tau(rng):
    ch = random_channels(rng)
    ch = ChannelSet(ch.h_d, ch.G, np.zeros_like(ch.h_r))
    F0 = effective_channel(ch, [0, 0, 0, 0], 2)
    for tau in ([1, 2, 3, 0], [3, 3, 3, 3]):
        assert np.allclose(effective_channel(ch, tau, 2), F0)
    assert np.allclose(F0, ch.h_d.conj())


def test_effective_channel_scalar_magnitude():
    ch = ChannelSet(h_d=[[0.0]], G=[[0.3 - 0.4j]], h_r=[[1.2 + 0.5j]])
    mags = [abs(effective_channel(ch, [t], 2)[0, 0]) for t in range(4)]
    assert np.allclose(mags, abs((1.2 + 0.5j) * (0.3 - 0.4j)))
    f = effective_channel(ch, [1], 2)[0, 0]
    assert f == pytest.approx(np.conj(1.2 + 0.5j) * 1j * (0.3 - 0.4j))


def test_effective_channel_matches_triple_loop(rng):
    ch = random_channels(rng, M=3, K=2, N=5)
    tau = np.array([0, 3, 1, 2, 1])
    b = 2
    F = effective_channel(ch, tau, b)
    K, M, N = ch.K, ch.M, ch.N
    oracle = np.zeros((K, M), dtype=complex)
    for k in range(K):
        for m in range(M):
            acc = np.conj(ch.h_d[k, m])
            for n in range(N):
                acc += np.conj(ch.h_r[k, n]) * np.exp(1j * 2 * np.pi * tau[n] / 2**b) * ch.G[n, m]
            oracle[k, m] = acc
    assert np.allclose(F, oracle, atol=1e-14)
    assert np.allclose(effective_channels(ch, tau[None, :], b)[0], F)


@given(st.integers(1, 3), st.data())
@settings(max_examples=30)
def test_effective_channel_periodic(b, data):
    ch = random_channels(np.random.default_rng(0), N=4)
    tau = np.array(data.draw(st.lists(st.integers(0, 2**b - 1), min_size=4, max_size=4)))
    i = data.draw(st.integers(0, 3))
    shifted = tau.copy()
    shifted[i] = (shifted[i] + 2**b) % 2**b
    assert np.allclose(effective_channel(ch, tau, b), effective_channel(ch, shifted, b))
    # periodicity of the underlying phase: tau and tau + 2**b give equal Theta
    theta = np.exp(1j * 2 * np.pi * (tau + 2**b) / 2**b)
    assert np.allclose(np.diag(theta), phase_matrix(tau, b))


def test_sinr_single_user():
    F = np.array([[1.0 + 1.0j, 0.5]])
    W = np.array([[0.3], [0.2j]])
    g = sinr(F, W, 0.1)
    assert g[0] == pytest.approx(abs(F[0] @ W[:, 0]) ** 2 / 0.1)


def test_sinr_zero_forcing_structure():
    F = np.eye(2, dtype=complex)
    p = np.array([2.0, 0.5])
    W = np.diag(np.sqrt(p))
    assert np.allclose(sinr(F, W, 0.25), p / 0.25)


def test_sinr_matches_expansion(rng):
    F = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    W = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    s2 = 0.7
    expected = []
    for k in range(2):
        sig = abs(F[k, 0] * W[0, k] + F[k, 1] * W[1, k]) ** 2
        j = 1 - k
        intf = abs(F[k, 0] * W[0, j] + F[k, 1] * W[1, j]) ** 2
        expected.append(sig / (intf + s2))
    assert np.allclose(sinr(F, W, s2), expected)


def test_sum_rate_examples():
    # gamma = [1, 3] -> log2(2) + log2(4)
    F = np.eye(2, dtype=complex)
    W = np.diag([1.0, np.sqrt(3.0)])
    assert sum_rate(F, W, 1.0) == pytest.approx(3.0)
    assert sum_rate(F, np.zeros((2, 2)), 1.0) == 0.0


def test_sum_rate_is_sum_of_user_rates(rng):
    F = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    W = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    per_user = [math.log2(1 + g) for g in sinr(F, W, 0.3)]
    assert sum_rate(F, W, 0.3) == pytest.approx(sum(per_user))


def test_sum_rate_invariant_under_user_permutation(rng):
    ch = random_channels(rng, M=4, K=3, N=5)
    W = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    tau = [0, 1, 2, 3, 1]
    perm = np.array([2, 0, 1])
    permuted = ChannelSet(ch.h_d[perm], ch.G, ch.h_r[perm])
    r1 = sum_rate(effective_channel(ch, tau, 2), W, 0.2)
    r2 = sum_rate(effective_channel(permuted, tau, 2), W[:, perm], 0.2)
    assert r1 == pytest.approx(r2, rel=1e-12)


@given(st.lists(st.floats(0.0, 10.0), min_size=2, max_size=8))
def test_sum_rate_monotone_single_user(scales):
    F = np.array([[0.8 - 0.3j, 0.1 + 0.2j]])
    w = np.array([[0.5], [0.5j]])
    rates = [sum_rate(F, s * w, 0.1) for s in sorted(scales)]
    assert all(a <= b + 1e-12 for a, b in zip(rates, rates[1:]))
