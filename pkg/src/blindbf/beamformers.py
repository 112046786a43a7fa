"""Online weight updates for constrained blind beamformers.

Four update rules share the single look-direction constraint
``w^H a(theta0) = 1``:

* ``cmv_sg_step``  -- stochastic gradient on output power
* ``ccm_sg_step``  -- stochastic gradient on the constant-modulus cost
* ``cmv_rls_step`` -- RLS on exponentially weighted output power
* ``ccm_rls_step`` -- RLS on the constant-modulus cost (two-stage gain)

Every function broadcasts over leading axes, so a state whose arrays carry a
batch dimension (one row per Monte Carlo trial) advances all trials in one
call. States are immutable; each step returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal, Union

import numpy as np

from .errors import SingularityError

ConstraintMode = Literal["paper_literal", "projection"]
CONSTRAINT_MODES = ("paper_literal", "projection")

# |a^H P a| below this is treated as a singular constrained solve
SINGULAR_TOL = 1e-14
# |alpha/(2e) + x^H pi| below this skips the rank-one update
DENOMINATOR_TOL = 1e-12


@dataclass(frozen=True)
class SgParams:
    step_size: float
    constraint_mode: ConstraintMode = "projection"

    def __post_init__(self):
        if not self.step_size > 0:
            raise ValueError(f"step_size must be positive, got {self.step_size!r}")
        if self.constraint_mode not in CONSTRAINT_MODES:
            raise ValueError(
                f"constraint_mode must be one of {CONSTRAINT_MODES}, got {self.constraint_mode!r}"
            )


@dataclass(frozen=True)
class RlsParams:
    """Forgetting factor, diagonal loading of ``R(0)`` and the ``e(i)`` guard."""

    forgetting: float = 0.998
    regularization: float = 0.01
    error_floor: float = 1e-8

    def __post_init__(self):
        if not 0.0 < self.forgetting <= 1.0:
            raise ValueError(f"forgetting must lie in (0, 1], got {self.forgetting!r}")
        if not self.regularization > 0:
            raise ValueError(f"regularization must be positive, got {self.regularization!r}")
        if not self.error_floor > 0:
            raise ValueError(f"error_floor must be positive, got {self.error_floor!r}")


@dataclass(frozen=True)
class SgState:
    weights: np.ndarray
    assumed_steering: np.ndarray


@dataclass(frozen=True)
class RlsState:
    """Inverse correlation matrix ``P``, current weights and step diagnostics.

    ``last_error`` holds the modulus error ``e(i)`` of the most recent CCM
    step, ``floored`` counts steps where ``|e|`` fell under the error floor,
    and ``skipped`` counts steps whose gain denominator was degenerate.
    """

    p_matrix: np.ndarray
    weights: np.ndarray
    assumed_steering: np.ndarray
    last_error: np.ndarray = field(default_factory=lambda: np.zeros(()))
    floored: np.ndarray = field(default_factory=lambda: np.zeros((), dtype=int))
    skipped: np.ndarray = field(default_factory=lambda: np.zeros((), dtype=int))


State = Union[SgState, RlsState]


def _samples(x) -> np.ndarray:
    return np.asarray(getattr(x, "samples", x), dtype=complex)


def _weights(state_or_w) -> np.ndarray:
    return np.asarray(getattr(state_or_w, "weights", state_or_w), dtype=complex)


def _inner(u, v):
    """Batched ``u^H v`` over the last axis."""
    return np.einsum("...i,...i->...", u.conj(), v)


def _matvec(P, v):
    return np.einsum("...ij,...j->...i", P, v)


def _hermitize(P):
    return 0.5 * (P + np.conj(np.swapaxes(P, -1, -2)))


def output(state: State | np.ndarray, x) -> np.ndarray | complex:
    """Beamformer output ``y = w^H x``."""
    w = _weights(state)
    xs = _samples(x)
    if w.shape[-1] != xs.shape[-1]:
        raise ValueError(f"weight length {w.shape[-1]} does not match snapshot length {xs.shape[-1]}")
    return _inner(w, xs)


def init_sg_state(steering: np.ndarray) -> SgState:
    """Start at ``w(0) = a/m`` so the constraint holds before the first step."""
    a = np.asarray(steering, dtype=complex)
    return SgState(weights=a / a.shape[-1], assumed_steering=a)


def init_rls_state(steering: np.ndarray, params: RlsParams) -> RlsState:
    """``P(0) = I/delta`` and ``w(0) = 0``, broadcast over any batch axes of ``steering``."""
    a = np.asarray(steering, dtype=complex)
    m = a.shape[-1]
    batch = a.shape[:-1]
    P = np.broadcast_to(np.eye(m, dtype=complex) / params.regularization, batch + (m, m)).copy()
    return RlsState(
        p_matrix=P,
        weights=np.zeros_like(a),
        assumed_steering=a,
        last_error=np.zeros(batch),
        floored=np.zeros(batch, dtype=int),
        skipped=np.zeros(batch, dtype=int),
    )


def _sg_update(state: SgState, xs: np.ndarray, scale: np.ndarray, params: SgParams) -> SgState:
    # scale is the per-trial scalar multiplying the input direction (mu * y* or mu*(|y|^2-1)*y*)
    w = state.weights
    a = state.assumed_steering
    if params.constraint_mode == "paper_literal":
        direction = xs - _inner(a, xs)[..., None] * a
        new_w = w - scale[..., None] * direction
    else:
        v = w - scale[..., None] * xs
        correction = (1.0 - _inner(a, v)) / np.real(_inner(a, a))
        new_w = v + correction[..., None] * a
    # zero step leaves w bit-identical (no round-off from re-projection)
    new_w = np.where((scale == 0)[..., None], w, new_w)
    return replace(state, weights=new_w)


def cmv_sg_step(state: SgState, x, params: SgParams) -> SgState:
    """Constrained minimum-variance stochastic-gradient step.

    ``paper_literal`` applies ``w - mu y* [x - (a^H x) a]`` verbatim.
    ``projection`` applies ``P[w - mu y* x] + a/m`` with the orthogonal
    projector ``P = I - a a^H / m``, which keeps ``w^H a = 1`` exactly.
    """
    xs = _samples(x)
    y = output(state, xs)
    return _sg_update(state, xs, params.step_size * np.conj(y), params)


def ccm_sg_step(state: SgState, x, params: SgParams) -> SgState:
    """Constrained constant-modulus stochastic-gradient step.

    Same as :func:`cmv_sg_step` with the gradient scaled by ``|y|^2 - 1``,
    so an output already on the unit circle leaves ``w`` untouched.
    """
    xs = _samples(x)
    y = output(state, xs)
    modulus_error = np.abs(y) ** 2 - 1.0
    return _sg_update(state, xs, params.step_size * modulus_error * np.conj(y), params)


def solve_constrained_weights(p_matrix: np.ndarray, steering: np.ndarray) -> np.ndarray:
    """Return ``P a / (a^H P a)``, the constrained LS weight for inverse correlation ``P``."""
    P = np.asarray(p_matrix, dtype=complex)
    a = np.asarray(steering, dtype=complex)
    Pa = _matvec(P, a)
    den = _inner(a, Pa)
    if np.any(np.abs(den) < SINGULAR_TOL):
        raise SingularityError("a^H P a is numerically zero")
    return Pa / den[..., None]


def _rank_one_downdate(P, pi, k, alpha):
    # P is Hermitian, so x^H P = (P x)^H = conj(pi)
    P_new = (P - k[..., :, None] * np.conj(pi)[..., None, :]) / alpha
    return _hermitize(P_new)


def cmv_rls_step(state: RlsState, x, params: RlsParams) -> RlsState:
    """One CMV-RLS step: inversion-lemma update of ``P`` then the constrained solve."""
    xs = _samples(x)
    alpha = params.forgetting
    P = state.p_matrix
    pi = _matvec(P, xs)
    k = pi / (alpha + np.real(_inner(xs, pi)))[..., None]
    P_new = _rank_one_downdate(P, pi, k, alpha)
    w = solve_constrained_weights(P_new, state.assumed_steering)
    return replace(state, p_matrix=P_new, weights=w)


def ccm_rls_step(state: RlsState, x, params: RlsParams) -> RlsState:
    """One CCM-RLS step.

    The modulus error ``e = |w^H x|^2 - 1`` uses the weights from the previous
    step. With ``pi = P x`` the gain is ``k = pi / (alpha/(2e) + x^H pi)``
    and ``P <- (P - k x^H P) / alpha``, after which ``w`` is re-solved from
    ``P``. When ``|e|`` is under ``error_floor`` the gain is taken as zero
    (pure forgetting); a vanishing gain denominator does the same and is
    counted in ``skipped``.
    """
    xs = _samples(x)
    alpha = params.forgetting
    P = state.p_matrix
    pi = _matvec(P, xs)
    e = np.abs(output(state, xs)) ** 2 - 1.0

    floored = np.abs(e) < params.error_floor
    safe_e = np.where(floored, 1.0, e)
    den = alpha / (2.0 * safe_e) + np.real(_inner(xs, pi))
    degenerate = ~floored & (np.abs(den) < DENOMINATOR_TOL)
    accept = ~floored & ~degenerate
    safe_den = np.where(accept, den, 1.0)
    k = np.where(accept[..., None], pi / safe_den[..., None], 0.0)

    P_new = _rank_one_downdate(P, pi, k, alpha)
    w = solve_constrained_weights(P_new, state.assumed_steering)
    return replace(
        state,
        p_matrix=P_new,
        weights=w,
        last_error=e,
        floored=state.floored + floored,
        skipped=state.skipped + degenerate,
    )


def mvdr_oracle(covariance: np.ndarray, steering: np.ndarray) -> np.ndarray:
    """Closed-form ``R^{-1} a / (a^H R^{-1} a)`` by direct solve."""
    R = np.asarray(covariance, dtype=complex)
    a = np.asarray(steering, dtype=complex)
    if not np.allclose(R, R.conj().T, rtol=1e-10, atol=1e-12 * np.abs(R).max(initial=1.0)):
        raise ValueError("covariance must be Hermitian")
    if np.linalg.cond(R) > 1e14:
        raise SingularityError("covariance is numerically singular")
    z = np.linalg.solve(R, a)
    den = np.vdot(a, z)
    if abs(den) < SINGULAR_TOL:
        raise SingularityError("a^H R^-1 a is numerically zero")
    return z / den


STEP_FUNCTIONS = {
    "cmv-sg": cmv_sg_step,
    "ccm-sg": ccm_sg_step,
    "cmv-rls": cmv_rls_step,
    "ccm-rls": ccm_rls_step,
}
