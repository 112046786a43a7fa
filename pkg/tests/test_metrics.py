import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blindbf import (
    ConfigurationError,
    NoiseSpec,
    SingularityError,
    SourceSpec,
    UlaGeometry,
    analytic_covariances,
    mvdr_oracle,
    optimal_sinr,
    sinr,
    steering_vector,
    to_db,
)

from conftest import random_complex

FIG2A = [SourceSpec(20, 1.0, True), SourceSpec(40, 0.1), SourceSpec(60, 0.1)]


def random_sources(rng, n_int):
    doas = rng.uniform(5, 175, size=n_int + 1)
    return [SourceSpec(float(doas[0]), float(rng.uniform(0.1, 2)), True)] + [
        SourceSpec(float(d), float(rng.uniform(0, 1))) for d in doas[1:]
    ]


def test_no_interferers_is_white(geom16):
    cov = analytic_covariances(geom16, [SourceSpec(20, 1.0, True)], NoiseSpec(0.01))
    np.testing.assert_array_equal(cov.r_int_noise, 0.01 * np.eye(16))


def test_signal_covariance_is_rank_one(geom16):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    assert np.trace(cov.r_signal).real == pytest.approx(16.0, rel=1e-14)
    assert np.linalg.matrix_rank(cov.r_signal) == 1
    assert np.trace(cov.r_int_noise).real == pytest.approx(3.36, rel=1e-14)


def test_missing_soi(geom16):
    with pytest.raises(ConfigurationError):
        analytic_covariances(geom16, [SourceSpec(40, 0.1)], NoiseSpec(0.01))


def test_matched_filter_closed_form(geom16):
    cov = analytic_covariances(geom16, [SourceSpec(20, 1.0, True)], NoiseSpec(0.01))
    a = steering_vector(geom16, 20.0)
    assert sinr(a / 16, cov) == pytest.approx(1600.0, rel=1e-13)
    assert to_db(1600.0) == pytest.approx(32.041199826559, abs=1e-9)


def test_scale_invariance_exact_example(geom16, rng):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    w = random_complex(rng, 16)
    assert sinr((3.7 - 2j) * w, cov) == pytest.approx(sinr(w, cov), rel=1e-13)


def test_orthogonal_weight_gives_zero(geom16):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    a = steering_vector(geom16, 20.0)
    v = np.zeros(16, complex)
    v[1] = 1
    v -= a * np.vdot(a, v) / 16
    assert 0.0 <= sinr(v, cov) < 1e-15


def test_sinr_rejects_zero(geom16):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    with pytest.raises(ValueError):
        sinr(np.zeros(16), cov)


def test_to_db_values():
    assert to_db(1.0) == 0.0
    assert to_db(100.0) == pytest.approx(20.0, abs=1e-12)
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            to_db(bad)


def test_optimal_white_noise(geom16):
    cov = analytic_covariances(geom16, [SourceSpec(20, 1.0, True)], NoiseSpec(0.01))
    assert optimal_sinr(cov, steering_vector(geom16, 20.0), 1.0) == pytest.approx(1600.0, rel=1e-12)


def test_optimal_fig2a_bracket(geom16):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    opt_db = to_db(optimal_sinr(cov, steering_vector(geom16, 20.0), 1.0))
    assert 31.0 < opt_db < 32.04


def test_optimal_singular(geom16):
    cov = analytic_covariances(geom16, [SourceSpec(20, 1.0, True), SourceSpec(40, 1.0)], NoiseSpec(0.0))
    with pytest.raises(SingularityError):
        optimal_sinr(cov, steering_vector(geom16, 20.0), 1.0)


@settings(max_examples=50)
@given(seed=st.integers(0, 2**32 - 1), n_int=st.integers(0, 5))
def test_adding_interferer_never_helps(seed, n_int):
    rng = np.random.default_rng(seed)
    g = UlaGeometry(8)
    sources = random_sources(rng, n_int)
    a = steering_vector(g, sources[0].doa_deg)
    base = optimal_sinr(analytic_covariances(g, sources, NoiseSpec(0.05)), a, sources[0].power)
    more = sources + [SourceSpec(float(rng.uniform(5, 175)), float(rng.uniform(0, 1)))]
    worse = optimal_sinr(analytic_covariances(g, more, NoiseSpec(0.05)), a, sources[0].power)
    assert worse <= base * (1 + 1e-12)


@settings(max_examples=50)
@given(seed=st.integers(0, 2**32 - 1), n_int=st.integers(0, 5))
def test_mvdr_is_optimal_and_int_noise_psd(seed, n_int):
    rng = np.random.default_rng(seed)
    g = UlaGeometry(8)
    sources = random_sources(rng, n_int)
    noise = NoiseSpec(float(rng.uniform(0.01, 1)))
    cov = analytic_covariances(g, sources, noise)
    a = steering_vector(g, sources[0].doa_deg)
    bound = optimal_sinr(cov, a, sources[0].power)
    assert sinr(mvdr_oracle(cov.r_int_noise, a), cov) == pytest.approx(bound, rel=1e-10)
    w = random_complex(rng, 8)
    w = w + a * (1 - np.vdot(a, w)) / 8
    assert sinr(w, cov) <= bound * (1 + 1e-9)
    eig = np.linalg.eigvalsh(cov.r_int_noise - noise.variance * np.eye(8))
    assert eig.min() >= -1e-10


def test_sinr_true_steering_under_mismatch(geom16):
    cov = analytic_covariances(geom16, FIG2A, NoiseSpec(0.01))
    # weights built for 21 deg are scored against the true 20 deg SOI
    w = mvdr_oracle(cov.r_int_noise, steering_vector(geom16, 21.0))
    a0 = steering_vector(geom16, 20.0)
    assert sinr(w, cov) < optimal_sinr(cov, a0, 1.0)
