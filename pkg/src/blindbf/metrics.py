"""Analytic covariances and output SINR."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .array_model import NoiseSpec, SourceSpec, UlaGeometry, steering_vector, validate_sources
from .errors import SingularityError


@dataclass(frozen=True)
class CovariancePair:
    """Desired-signal covariance ``r_signal`` and interference-plus-noise ``r_int_noise``."""

    r_signal: np.ndarray
    r_int_noise: np.ndarray


def analytic_covariances(
    geom: UlaGeometry, sources: Sequence[SourceSpec], noise: NoiseSpec
) -> CovariancePair:
    """Build ``R_s`` from the true SOI direction and ``R_{i+n}`` from everything else."""
    soi = validate_sources(sources)
    m = geom.num_sensors
    a0 = steering_vector(geom, sources[soi].doa_deg)
    r_signal = sources[soi].power * np.outer(a0, a0.conj())
    r_int_noise = noise.variance * np.eye(m, dtype=complex)
    for k, src in enumerate(sources):
        if k == soi:
            continue
        ak = steering_vector(geom, src.doa_deg)
        r_int_noise = r_int_noise + src.power * np.outer(ak, ak.conj())
    return CovariancePair(r_signal=r_signal, r_int_noise=r_int_noise)


def _quad(w, R):
    return np.real(np.einsum("...i,ij,...j->...", w.conj(), R, w))


def sinr(w: np.ndarray, cov: CovariancePair) -> np.ndarray | float:
    """Output SINR ``(w^H R_s w) / (w^H R_{i+n} w)`` as a linear ratio.

    ``w`` may carry leading batch axes. A zero-power interference-plus-noise
    response gives ``inf``.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(~np.any(w != 0, axis=-1)):
        raise ValueError("weight vector must be nonzero")
    # both matrices are PSD; clip round-off below zero
    num = np.maximum(_quad(w, cov.r_signal), 0.0)
    den = _quad(w, cov.r_int_noise)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    return out if out.ndim else float(out)


def optimal_sinr(cov: CovariancePair, steering: np.ndarray, soi_power: float) -> float:
    """MVDR bound ``soi_power * a^H R_{i+n}^{-1} a``."""
    R = cov.r_int_noise
    if np.linalg.cond(R) > 1e14:
        raise SingularityError("interference-plus-noise covariance is singular")
    a = np.asarray(steering, dtype=complex)
    return float(soi_power * np.real(np.vdot(a, np.linalg.solve(R, a))))


def to_db(linear) -> np.ndarray | float:
    """``10 log10(linear)`` for strictly positive input."""
    arr = np.asarray(linear, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("to_db requires strictly positive input")
    out = 10.0 * np.log10(arr)
    return out if out.ndim else float(out)
