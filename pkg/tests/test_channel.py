"""Channel model: power split, fading statistics, noise, composition."""

import math

import numpy as np
import pytest

from noma_uplink import (
    NoiseModel,
    build_constellation,
    enumerate_codewords,
    make_codeword,
    sample_channel,
    sample_noise,
    scale_codeword,
    transmit,
    validate_alpha,
)
from noma_uplink.channel import ChannelMatrix
from noma_uplink.rng import normals_from_uniforms, trial_stream


def gen(seed=1234):
    return trial_stream(seed)


def test_alpha_validation():
    assert validate_alpha(0.5) == 0.5
    for bad in (0.49, 1.0, 1.2, -0.5):
        with pytest.raises(ValueError):
            validate_alpha(bad)


def test_noise_model_snr_mapping():
    nm = NoiseModel.from_ebn0_db(20.0)
    assert nm.n0 == pytest.approx(0.01, rel=1e-15)
    assert NoiseModel.from_n0(0.01).ebn0_db == pytest.approx(20.0, abs=1e-12)
    with pytest.raises(ValueError):
        NoiseModel.from_n0(0.0)


def test_scale_codeword_balanced():
    c = build_constellation("qpsk")
    w = make_codeword(c, 0, 0)  # (1+1j, 1+1j)
    x1, x2 = scale_codeword(w, 0.5)
    assert x1 == pytest.approx(math.sqrt(0.5) * (1 + 1j))
    assert x2 == pytest.approx(math.sqrt(0.5) * (1 + 1j))
    assert abs(x1) ** 2 + abs(x2) ** 2 == pytest.approx(2.0)


@pytest.mark.parametrize("kind,expected", [("qpsk", 2.0), ("qam16", 4.0)])
@pytest.mark.parametrize("alpha", [0.5, 0.9, 0.99])
def test_mean_transmit_energy_independent_of_alpha(kind, expected, alpha):
    # Exhaustive average over all codewords: total transmit power is fixed.
    c = build_constellation(kind)
    cws = enumerate_codewords(c)
    total = 0.0
    for w in cws:
        x1, x2 = scale_codeword(w, alpha)
        total += abs(x1) ** 2 + abs(x2) ** 2
    assert total / len(cws) == pytest.approx(expected, rel=1e-12)


def test_scaled_difference_norm_table_value():
    # alpha = 0.9, difference (2, 0): ||X - X_hat||^2 = 4 alpha = 3.6.
    c = build_constellation("qpsk")
    i = {p: k for k, p in enumerate(c.points)}
    w = make_codeword(c, i[1 + 1j], i[1 + 1j])
    w_hat = make_codeword(c, i[-1 + 1j], i[1 + 1j])
    x = scale_codeword(w, 0.9)
    x_hat = scale_codeword(w_hat, 0.9)
    d2 = abs(x[0] - x_hat[0]) ** 2 + abs(x[1] - x_hat[1]) ** 2
    assert d2 == pytest.approx(3.6, rel=1e-12)


def test_sample_channel_is_deterministic_per_stream():
    h1 = [sample_channel(gen(42)) for _ in range(1)][0]
    h2 = sample_channel(gen(42))
    assert h1 == h2
    assert sample_channel(gen(43)) != h1


def test_sample_channel_moments_match_spec_bounds():
    # 10^6 draws through the documented 8-uniform layout; scalar calls are
    # verified against the batch on a prefix, then moments are checked on
    # the batch. Thresholds: |mean| < 0.005, variance within 1% of 1,
    # |cross-correlation| < 0.01.
    n = 1_000_000
    rng = gen(2024)
    u = rng.random((n, 8))
    g = normals_from_uniforms(u) / math.sqrt(2.0)
    entries = g[:, 0::2] + 1j * g[:, 1::2]  # columns: h11, h12, h21, h22

    rng2 = gen(2024)
    for row in range(100):
        h = sample_channel(rng2)
        assert (h.h11, h.h12, h.h21, h.h22) == tuple(entries[row])

    for k in range(4):
        col = entries[:, k]
        assert abs(col.mean()) < 0.005
        assert abs((np.abs(col) ** 2).mean() - 1.0) < 0.01
    for a in range(4):
        for b in range(a + 1, 4):
            assert abs(np.mean(entries[:, a] * np.conj(entries[:, b]))) < 0.01


def test_sample_noise_variance_per_component():
    # Sampled noise has variance n0 per real component (2 n0 per complex
    # sample); this is the simulator's SNR calibration, see channel docs.
    nm = NoiseModel.from_ebn0_db(20.0)
    rng = gen(7)
    w = np.array([sample_noise(rng, nm) for _ in range(200_000)])
    for col in (w[:, 0], w[:, 1]):
        assert np.var(col.real) == pytest.approx(nm.n0, rel=0.02)
        assert np.var(col.imag) == pytest.approx(nm.n0, rel=0.02)
        assert np.var(col) == pytest.approx(2 * nm.n0, rel=0.02)


def test_transmit_identity_channel_no_noise():
    c = build_constellation("qpsk")
    w = make_codeword(c, 2, 1)
    h = ChannelMatrix(1, 0, 0, 1)
    r = transmit(h, w, 0.5, (0j, 0j))
    x1, x2 = scale_codeword(w, 0.5)
    assert (r.r1, r.r2) == (x1, x2)


def test_transmit_matches_matrix_vector_oracle():
    # Independent oracle: numpy matrix-vector product of H with X.
    c = build_constellation("qam16")
    rng = gen(99)
    for _ in range(50):
        h = sample_channel(rng)
        w = make_codeword(c, int(rng.random() * 16), int(rng.random() * 16))
        alpha = 0.5 + 0.49 * rng.random()
        r = transmit(h, w, alpha, (0j, 0j))
        expected = h.as_array() @ np.array(scale_codeword(w, alpha))
        assert r.r1 == pytest.approx(expected[0], rel=1e-12)
        assert r.r2 == pytest.approx(expected[1], rel=1e-12)


def test_transmit_zero_channel_returns_noise():
    c = build_constellation("qpsk")
    w = make_codeword(c, 0, 0)
    h = ChannelMatrix(0, 0, 0, 0)
    noise = (0.3 - 0.1j, -0.2 + 0.7j)
    r = transmit(h, w, 0.9, noise)
    assert (r.r1, r.r2) == noise


def test_transmit_linear_in_noise_and_signal():
    c = build_constellation("qpsk")
    w = make_codeword(c, 1, 2)
    rng = gen(5)
    h = sample_channel(rng)
    nm = NoiseModel.from_ebn0_db(10.0)
    noise = sample_noise(rng, nm)
    r_noisy = transmit(h, w, 0.7, noise)
    r_clean = transmit(h, w, 0.7, (0j, 0j))
    assert r_noisy.r1 - r_clean.r1 == pytest.approx(noise[0], rel=1e-12)
    assert r_noisy.r2 - r_clean.r2 == pytest.approx(noise[1], rel=1e-12)
