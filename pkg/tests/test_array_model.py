import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blindbf import (
    ConfigurationError,
    NoiseSpec,
    SourceSpec,
    UlaGeometry,
    draw_bpsk,
    generate_snapshot,
    generate_snapshots,
    steering_vector,
)


def test_broadside_is_all_ones():
    np.testing.assert_array_equal(steering_vector(UlaGeometry(4, 0.5), 90.0).real.round(15), np.ones(4))


def test_endfire_limit_alternates():
    # 0 deg is outside the open DOA interval, so approach it from above
    a = steering_vector(UlaGeometry(2, 0.5), 1e-9)
    np.testing.assert_allclose(a, [1, -1], atol=1e-12)


def test_m16_matches_scalar_phase_loop(geom16):
    a = steering_vector(geom16, 20.0)
    oracle = [cmath.exp(-2j * math.pi * k * 0.5 * math.cos(math.radians(20.0))) for k in range(16)]
    np.testing.assert_allclose(a, oracle, rtol=0, atol=1e-13)
    assert a[0] == 1 + 0j
    assert a[1] == pytest.approx(-0.9821058460726546 - 0.18832978285421337j, abs=1e-12)


@pytest.mark.parametrize("doa", [0.0, 180.0, -5.0, 200.0])
def test_doa_out_of_range(doa, geom16):
    with pytest.raises(ValueError):
        steering_vector(geom16, doa)


@pytest.mark.parametrize("kwargs", [dict(num_sensors=0), dict(num_sensors=4, spacing_ratio=0.0)])
def test_invalid_geometry(kwargs):
    with pytest.raises(ValueError):
        UlaGeometry(**kwargs)


@given(
    m=st.integers(1, 64),
    ratio=st.floats(0.05, 2.0),
    doa=st.floats(0.01, 179.99),
)
def test_steering_unit_modulus_and_deterministic(m, ratio, doa):
    g = UlaGeometry(m, ratio)
    a = steering_vector(g, doa)
    np.testing.assert_allclose(np.abs(a), 1.0, atol=1e-14)
    assert a[0] == 1 + 0j
    np.testing.assert_array_equal(a, steering_vector(g, doa))


def test_bpsk_values(rng):
    assert draw_bpsk(0.0, rng) == 0.0
    assert {draw_bpsk(4.0, rng) for _ in range(50)} == {2.0, -2.0}
    with pytest.raises(ValueError):
        draw_bpsk(-1.0, rng)


def test_bpsk_moments(rng):
    draws = np.array([draw_bpsk(1.0, rng) for _ in range(100_000)])
    assert abs(draws.mean()) < 0.02
    assert abs((draws**2).mean() - 1.0) < 0.02


def test_noise_free_zero_power_gives_zero(rng, geom16):
    snap = generate_snapshot(geom16, [SourceSpec(20, 0.0, True)], NoiseSpec(0.0), rng)
    np.testing.assert_array_equal(snap.samples, np.zeros(16))


def test_single_sensor_noise_free(rng):
    for _ in range(10):
        snap = generate_snapshot(UlaGeometry(1), [SourceSpec(20, 1.0, True)], NoiseSpec(0.0), rng)
        assert snap.samples.shape == (1,)
        assert snap.samples[0] == snap.soi_symbol
        assert abs(snap.soi_symbol) == 1.0


def test_power_balance(rng, geom16):
    sources = [SourceSpec(20, 1.0, True), SourceSpec(40, 0.1), SourceSpec(60, 0.1)]
    x, _ = generate_snapshots(geom16, sources, NoiseSpec(0.01), rng, 10_000)
    power = np.mean(np.sum(np.abs(x) ** 2, axis=1))
    assert power == pytest.approx(16 * 1.21, rel=0.02)


def test_configuration_errors(rng, geom16):
    with pytest.raises(ConfigurationError):
        generate_snapshot(geom16, [], NoiseSpec(0.01), rng)
    with pytest.raises(ConfigurationError):
        generate_snapshot(geom16, [SourceSpec(20, 1, True), SourceSpec(40, 1, True)], NoiseSpec(0.01), rng)
    with pytest.raises(ConfigurationError):
        generate_snapshot(geom16, [SourceSpec(40, 1)], NoiseSpec(0.01), rng)


def test_seeded_reproducibility(geom16):
    sources = [SourceSpec(20, 1.0, True), SourceSpec(40, 0.1)]
    a, sa = generate_snapshots(geom16, sources, NoiseSpec(0.01), np.random.default_rng(3), 50)
    b, sb = generate_snapshots(geom16, sources, NoiseSpec(0.01), np.random.default_rng(3), 50)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(sa, sb)


def test_noise_is_circular(rng):
    x, _ = generate_snapshots(UlaGeometry(4), [SourceSpec(20, 0.0, True)], NoiseSpec(2.0), rng, 50_000)
    assert np.var(x.real) == pytest.approx(1.0, rel=0.03)
    assert np.var(x.imag) == pytest.approx(1.0, rel=0.03)
    assert abs(np.mean(x * x)) < 0.05  # pseudo-covariance vanishes


def test_empirical_covariance_converges(geom16):
    sources = [SourceSpec(20, 1.0, True), SourceSpec(40, 0.1), SourceSpec(60, 0.1)]
    x, _ = generate_snapshots(geom16, sources, NoiseSpec(0.01), np.random.default_rng(7), 100_000)
    R_hat = x.T @ x.conj() / len(x)
    R = 0.01 * np.eye(16, dtype=complex)
    for s in sources:
        a = steering_vector(geom16, s.doa_deg)
        R += s.power * np.outer(a, a.conj())
    assert np.linalg.norm(R_hat - R) / np.linalg.norm(R) < 0.05
