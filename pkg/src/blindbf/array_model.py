"""Uniform linear array geometry and narrowband snapshot synthesis.

All angles are in degrees at the public interface. The ULA phase convention
uses ``cos(theta)``, so broadside is 90 degrees and the valid DOA range is the
open interval (0, 180).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class UlaGeometry:
    """Sensor count ``num_sensors`` and element spacing in wavelengths."""

    num_sensors: int = 16
    spacing_ratio: float = 0.5

    def __post_init__(self):
        if int(self.num_sensors) != self.num_sensors or self.num_sensors < 1:
            raise ValueError(f"num_sensors must be a positive integer, got {self.num_sensors!r}")
        if not self.spacing_ratio > 0:
            raise ValueError(f"spacing_ratio must be positive, got {self.spacing_ratio!r}")


@dataclass(frozen=True)
class SourceSpec:
    """One BPSK emitter: arrival angle, symbol variance, and SOI flag."""

    doa_deg: float
    power: float
    is_soi: bool = False

    def __post_init__(self):
        _check_doa(self.doa_deg)
        if not self.power >= 0:
            raise ValueError(f"source power must be nonnegative, got {self.power!r}")


@dataclass(frozen=True)
class NoiseSpec:
    """Per-sensor complex noise power (split evenly over I and Q)."""

    variance: float = 0.01

    def __post_init__(self):
        if not self.variance >= 0:
            raise ValueError(f"noise variance must be nonnegative, got {self.variance!r}")


@dataclass(frozen=True)
class Snapshot:
    """Array output ``x(i)`` and the SOI symbol that produced it."""

    samples: np.ndarray
    soi_symbol: float


def _check_doa(doa_deg):
    if not 0.0 < doa_deg < 180.0:
        raise ValueError(f"DOA must lie in (0, 180) degrees, got {doa_deg!r}")


def steering_vector(geom: UlaGeometry, doa_deg: float) -> np.ndarray:
    """Array response ``a(theta)`` of a ULA to a unit plane wave.

    Element ``k`` is ``exp(-2j*pi*k*spacing_ratio*cos(theta))``.

    Parameters
    ----------
    geom : UlaGeometry
        Array geometry.
    doa_deg : float
        Direction of arrival in degrees, strictly inside (0, 180).

    Returns
    -------
    np.ndarray
        Complex vector of shape ``(num_sensors,)`` with unit-modulus entries.
    """
    if not isinstance(geom, UlaGeometry):
        raise ValueError("geom must be a UlaGeometry")
    _check_doa(doa_deg)
    k = np.arange(geom.num_sensors)
    phase = -2.0 * np.pi * geom.spacing_ratio * np.cos(np.deg2rad(doa_deg)) * k
    return np.exp(1j * phase)


def draw_bpsk(power: float, rng: np.random.Generator) -> float:
    """Return ``+sqrt(power)`` or ``-sqrt(power)`` with equal probability."""
    if not power >= 0:
        raise ValueError(f"power must be nonnegative, got {power!r}")
    sign = 1.0 - 2.0 * float(rng.integers(0, 2))
    return sign * float(np.sqrt(power))


def validate_sources(sources: Sequence[SourceSpec]) -> int:
    """Check that exactly one source is the SOI and return its index."""
    if len(sources) == 0:
        raise ConfigurationError("sources must be nonempty")
    soi = [k for k, s in enumerate(sources) if s.is_soi]
    if len(soi) != 1:
        raise ConfigurationError(f"exactly one source must be the SOI, found {len(soi)}")
    return soi[0]


def array_manifold(geom: UlaGeometry, doas_deg: Sequence[float]) -> np.ndarray:
    """Stack steering vectors column-wise into an ``(m, q)`` matrix."""
    return np.stack([steering_vector(geom, d) for d in doas_deg], axis=1)


def generate_snapshots(
    geom: UlaGeometry,
    sources: Sequence[SourceSpec],
    noise: NoiseSpec,
    rng: np.random.Generator,
    num_snapshots: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw a block of snapshots ``x(i) = A s(i) + n(i)``.

    Symbols for every source are drawn first (shape ``(n, q)``), then the
    real and imaginary noise planes, so the stream is a fixed function of
    the generator state.

    Returns
    -------
    samples : np.ndarray
        Complex array of shape ``(num_snapshots, num_sensors)``.
    soi_symbols : np.ndarray
        Real array of shape ``(num_snapshots,)``.
    """
    soi = validate_sources(sources)
    m = geom.num_sensors
    A = array_manifold(geom, [s.doa_deg for s in sources])
    amplitude = np.sqrt(np.array([s.power for s in sources], dtype=float))
    bits = rng.integers(0, 2, size=(num_snapshots, len(sources)))
    symbols = (1.0 - 2.0 * bits) * amplitude
    planes = rng.standard_normal((2, num_snapshots, m))
    n = np.sqrt(noise.variance / 2.0) * (planes[0] + 1j * planes[1])
    samples = symbols @ A.T + n
    return samples, symbols[:, soi].copy()


def generate_snapshot(
    geom: UlaGeometry,
    sources: Sequence[SourceSpec],
    noise: NoiseSpec,
    rng: np.random.Generator,
) -> Snapshot:
    """Draw a single snapshot; see :func:`generate_snapshots`."""
    samples, soi = generate_snapshots(geom, sources, noise, rng, 1)
    return Snapshot(samples=samples[0], soi_symbol=float(soi[0]))
