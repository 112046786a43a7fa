"""Monte Carlo driver for SINR-versus-snapshot experiments.

A trial is fully determined by its integer seed: the seed is expanded with
``numpy.random.SeedSequence`` into one child stream for the steering-mismatch
draw and one for the snapshots, and every algorithm in the trial consumes the
same snapshot block. Trials are evaluated in fixed-size chunks, vectorized
over the chunk, and the chunk sums are reduced in trial order, so results
do not depend on how many workers evaluate the chunks.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from .array_model import NoiseSpec, SourceSpec, UlaGeometry, generate_snapshots, steering_vector, validate_sources
from .beamformers import (
    STEP_FUNCTIONS,
    RlsParams,
    SgParams,
    init_rls_state,
    init_sg_state,
)
from .errors import ConfigurationError
from .metrics import CovariancePair, analytic_covariances, optimal_sinr

log = logging.getLogger(__name__)

ALGORITHMS = ("cmv-sg", "ccm-sg", "cmv-rls", "ccm-rls")
BUILTIN_SCENARIOS = ("fig2a", "fig2b", "fig3")

SINR_CAP_DB = 80.0
SINR_CAP = 10.0 ** (SINR_CAP_DB / 10.0)

# trials per vectorized block; fixed so results never depend on worker count
CHUNK_SIZE = 25

# Chosen by grid_search_mu on fig2a over {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}
# with 20 trials, seeds 0..19 (scripts/tune_step_sizes.py).
TUNED_STEP_SIZES = {"cmv-sg": 1e-3, "ccm-sg": 1e-2}


@dataclass(frozen=True)
class ScenarioSegment:
    """Sources active on snapshots ``start_snapshot..end_snapshot`` (1-based, inclusive)."""

    start_snapshot: int
    end_snapshot: int
    sources: tuple[SourceSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        if self.start_snapshot < 1 or self.end_snapshot < self.start_snapshot:
            raise ConfigurationError(
                f"segment bounds must satisfy 1 <= start <= end, got [{self.start_snapshot}, {self.end_snapshot}]"
            )
        validate_sources(self.sources)

    @property
    def length(self) -> int:
        return self.end_snapshot - self.start_snapshot + 1

    @property
    def soi(self) -> SourceSpec:
        return self.sources[validate_sources(self.sources)]


@dataclass(frozen=True)
class MismatchSpec:
    """Uniform look-direction error on ``[-half_width_deg, +half_width_deg]``.

    The error is drawn once per trial unless ``per_snapshot`` is set.
    """

    half_width_deg: float
    per_snapshot: bool = False

    def __post_init__(self):
        if not self.half_width_deg >= 0:
            raise ConfigurationError(f"half_width_deg must be nonnegative, got {self.half_width_deg!r}")


@dataclass(frozen=True)
class ScenarioTimeline:
    geometry: UlaGeometry
    noise: NoiseSpec
    segments: tuple[ScenarioSegment, ...]
    total_snapshots: int
    assumed_doa_deg: float | None = None
    mismatch: MismatchSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ConfigurationError("segments must be nonempty")
        expected = 1
        for seg in self.segments:
            if seg.start_snapshot != expected:
                raise ConfigurationError(
                    f"segments must be contiguous: expected start {expected}, got {seg.start_snapshot}"
                )
            expected = seg.end_snapshot + 1
        if expected - 1 != self.total_snapshots:
            raise ConfigurationError(
                f"segments cover [1, {expected - 1}] but total_snapshots is {self.total_snapshots}"
            )
        if self.assumed_doa_deg is not None and not 0 < self.assumed_doa_deg < 180:
            raise ConfigurationError(f"assumed_doa_deg must lie in (0, 180), got {self.assumed_doa_deg!r}")

    @property
    def nominal_doa_deg(self) -> float:
        """Assumed SOI direction before any random mismatch is applied."""
        if self.assumed_doa_deg is not None:
            return self.assumed_doa_deg
        return self.segments[0].soi.doa_deg

    def segment_index(self) -> np.ndarray:
        """Segment number for each 0-based snapshot position."""
        return np.repeat(np.arange(len(self.segments)), [s.length for s in self.segments])

    def covariances(self) -> list[CovariancePair]:
        return [analytic_covariances(self.geometry, s.sources, self.noise) for s in self.segments]

    def optimal_sinrs(self) -> list[float]:
        """MVDR bound of every segment, using the true SOI direction."""
        out = []
        for seg, cov in zip(self.segments, self.covariances()):
            a0 = steering_vector(self.geometry, seg.soi.doa_deg)
            out.append(optimal_sinr(cov, a0, seg.soi.power))
        return out


Params = Union[SgParams, RlsParams]


@dataclass(frozen=True)
class AlgoSpec:
    name: str
    params: Params

    def __post_init__(self):
        if self.name not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.name!r}; expected one of {ALGORITHMS}")
        wanted = RlsParams if self.name.endswith("rls") else SgParams
        if not isinstance(self.params, wanted):
            raise ConfigurationError(f"{self.name} needs {wanted.__name__}, got {type(self.params).__name__}")


@dataclass(frozen=True, eq=False)
class SinrTrace:
    """Ensemble-averaged linear SINR per snapshot for one algorithm."""

    algorithm: str
    per_snapshot_sinr: np.ndarray
    trials: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def default_algo_specs(rls: RlsParams | None = None) -> list[AlgoSpec]:
    """All four algorithms with the shipped step sizes and RLS defaults."""
    rls = rls or RlsParams()
    return [
        AlgoSpec("cmv-sg", SgParams(TUNED_STEP_SIZES["cmv-sg"])),
        AlgoSpec("ccm-sg", SgParams(TUNED_STEP_SIZES["ccm-sg"])),
        AlgoSpec("cmv-rls", rls),
        AlgoSpec("ccm-rls", rls),
    ]


def builtin_scenario(name: str) -> ScenarioTimeline:
    """One of the three shipped experiments: ``fig2a``, ``fig2b`` or ``fig3``.

    All use a 16-element half-wavelength ULA, SOI at 20 degrees with unit
    power, noise variance 0.01 and interferers at 10 dB INR (power 0.1).
    """
    geom = UlaGeometry(16, 0.5)
    noise = NoiseSpec(0.01)
    inr_power = 10.0 ** (10.0 / 10.0) * noise.variance

    def sources(*interferer_doas):
        return (SourceSpec(20.0, 1.0, True),) + tuple(SourceSpec(d, inr_power) for d in interferer_doas)

    if name == "fig2a":
        return ScenarioTimeline(geom, noise, (ScenarioSegment(1, 1000, sources(40.0, 60.0)),), 1000)
    if name == "fig2b":
        return ScenarioTimeline(
            geom, noise, (ScenarioSegment(1, 1000, sources(40.0, 60.0)),), 1000, mismatch=MismatchSpec(1.0)
        )
    if name == "fig3":
        segments = (
            ScenarioSegment(1, 1000, sources(40.0, 60.0)),
            ScenarioSegment(1001, 2000, sources(40.0, 60.0, 30.0, 50.0)),
            ScenarioSegment(2001, 3000, sources(40.0, 60.0, 30.0, 25.0, 35.0)),
        )
        return ScenarioTimeline(geom, noise, segments, 3000)
    raise ConfigurationError(f"unknown scenario {name!r}; expected one of {BUILTIN_SCENARIOS}")


def trial_streams(timeline: ScenarioTimeline, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Snapshots ``(N, m)`` and assumed SOI DOAs for one trial seed.

    The assumed DOA array has shape ``(N,)`` when the mismatch is redrawn per
    snapshot and shape ``()`` otherwise.
    """
    mismatch_ss, snapshot_ss = np.random.SeedSequence(seed).spawn(2)
    rng = np.random.default_rng(snapshot_ss)
    blocks = [
        generate_snapshots(timeline.geometry, seg.sources, timeline.noise, rng, seg.length)[0]
        for seg in timeline.segments
    ]
    X = np.concatenate(blocks, axis=0)

    nominal = timeline.nominal_doa_deg
    mm = timeline.mismatch
    if mm is None or mm.half_width_deg == 0:
        doas = np.full(timeline.total_snapshots if mm and mm.per_snapshot else (), nominal)
    else:
        mrng = np.random.default_rng(mismatch_ss)
        size = timeline.total_snapshots if mm.per_snapshot else None
        doas = nominal + mrng.uniform(-mm.half_width_deg, mm.half_width_deg, size=size)
    return X, np.asarray(doas, dtype=float)


def _steering_table(geom: UlaGeometry, doas: np.ndarray) -> np.ndarray:
    flat = [steering_vector(geom, float(d)) for d in doas.ravel()]
    return np.asarray(flat).reshape(doas.shape + (geom.num_sensors,))


def _trace_sinr(w: np.ndarray, cov: CovariancePair) -> np.ndarray:
    num = np.maximum(np.real(np.einsum("bi,ij,bj->b", w.conj(), cov.r_signal, w)), 0.0)
    den = np.real(np.einsum("bi,ij,bj->b", w.conj(), cov.r_int_noise, w))
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.minimum(num / den, SINR_CAP)


def run_trials(timeline: ScenarioTimeline, algo_specs: Sequence[AlgoSpec], seeds: Sequence[int]) -> dict[str, np.ndarray]:
    """Per-trial linear SINR, ``(len(seeds), N)`` per algorithm, vectorized over trials."""
    streams = [trial_streams(timeline, int(s)) for s in seeds]
    X = np.stack([x for x, _ in streams])
    doas = np.stack([d for _, d in streams])
    A = _steering_table(timeline.geometry, doas)  # (B, m) or (B, N, m)
    per_snapshot = A.ndim == 3
    covs = timeline.covariances()
    seg_of = timeline.segment_index()

    out = {}
    for spec in algo_specs:
        step = STEP_FUNCTIONS[spec.name]
        a_init = A[:, 0] if per_snapshot else A
        if spec.name.endswith("rls"):
            state = init_rls_state(a_init, spec.params)
        else:
            state = init_sg_state(a_init)
        trace = np.empty((len(seeds), timeline.total_snapshots))
        with np.errstate(over="ignore", invalid="ignore"):
            for i in range(timeline.total_snapshots):
                if per_snapshot:
                    state = replace(state, assumed_steering=A[:, i])
                state = step(state, X[:, i], spec.params)
                trace[:, i] = _trace_sinr(state.weights, covs[seg_of[i]])
        out[spec.name] = trace
    return out


def run_trial(timeline: ScenarioTimeline, algo_spec: AlgoSpec, seed: int) -> np.ndarray:
    """Linear SINR after every snapshot for a single trial (capped at 80 dB)."""
    if not isinstance(algo_spec, AlgoSpec):
        raise ConfigurationError("algo_spec must be an AlgoSpec")
    return run_trials(timeline, [algo_spec], [seed])[algo_spec.name][0]


def _chunks(base_seed: int, num_trials: int) -> list[list[int]]:
    seeds = [base_seed + t for t in range(num_trials)]
    return [seeds[i : i + CHUNK_SIZE] for i in range(0, num_trials, CHUNK_SIZE)]


def run_montecarlo(
    timeline: ScenarioTimeline,
    algo_specs: Sequence[AlgoSpec],
    num_trials: int,
    base_seed: int = 0,
    workers: int = 1,
) -> list[SinrTrace]:
    """Average linear SINR over trials with seeds ``base_seed .. base_seed+K-1``."""
    if num_trials < 1:
        raise ConfigurationError("num_trials must be >= 1")
    if not algo_specs:
        raise ConfigurationError("algo_specs must be nonempty")
    names = [s.name for s in algo_specs]
    if len(set(names)) != len(names):
        raise ConfigurationError(f"duplicate algorithm names in {names}")

    chunks = _chunks(base_seed, num_trials)
    log.info("running %d trials in %d chunks on %d worker(s)", num_trials, len(chunks), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: run_trials(timeline, algo_specs, c), chunks))
    else:
        results = [run_trials(timeline, algo_specs, c) for c in chunks]

    traces = []
    for name in names:
        total = np.zeros(timeline.total_snapshots)
        for r in results:
            total = total + r[name].sum(axis=0)
        traces.append(SinrTrace(name, total / num_trials, num_trials))
    return traces


def grid_search_mu(
    timeline: ScenarioTimeline,
    algo: str,
    grid: Sequence[float],
    constraint_mode: str = "projection",
    num_trials: int = 20,
    base_seed: int = 0,
) -> float:
    """Step size maximizing mean linear SINR over the last 10% of snapshots.

    Candidates whose averaged trace contains non-finite values are discarded.
    Ties go to the smaller step size.
    """
    if algo not in ("cmv-sg", "ccm-sg"):
        raise ConfigurationError(f"grid search applies to SG algorithms, got {algo!r}")
    if len(grid) == 0:
        raise ValueError("grid must be nonempty")
    tail = max(1, timeline.total_snapshots // 10)
    best, best_score = None, -np.inf
    for mu in sorted(float(g) for g in grid):
        spec = AlgoSpec(algo, SgParams(mu, constraint_mode))
        (trace,) = run_montecarlo(timeline, [spec], num_trials, base_seed)
        values = trace.per_snapshot_sinr
        if not np.all(np.isfinite(values)):
            log.info("mu=%g diverged", mu)
            continue
        score = float(values[-tail:].mean())
        log.info("mu=%g tail SINR %.3f", mu, score)
        if score > best_score:
            best, best_score = mu, score
    if best is None:
        raise ConfigurationError("every step size in the grid diverged")
    return best
