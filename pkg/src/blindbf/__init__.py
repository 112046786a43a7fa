"""Blind adaptive beamforming with constrained constant-modulus RLS.

Four online weight-update rules share one interface (CMV-SG, CCM-SG,
CMV-RLS, CCM-RLS), together with a ULA snapshot generator, analytic SINR
metrics and a Monte Carlo harness for SINR-versus-snapshot experiments.
"""

from .array_model import (
    NoiseSpec,
    Snapshot,
    SourceSpec,
    UlaGeometry,
    draw_bpsk,
    generate_snapshot,
    generate_snapshots,
    steering_vector,
)
from .beamformers import (
    RlsParams,
    RlsState,
    SgParams,
    SgState,
    ccm_rls_step,
    ccm_sg_step,
    cmv_rls_step,
    cmv_sg_step,
    init_rls_state,
    init_sg_state,
    mvdr_oracle,
    output,
    solve_constrained_weights,
)
from .errors import ConfigurationError, SingularityError
from .harness import (
    AlgoSpec,
    MismatchSpec,
    ScenarioSegment,
    ScenarioTimeline,
    SinrTrace,
    builtin_scenario,
    grid_search_mu,
    run_montecarlo,
    run_trial,
)
from .metrics import CovariancePair, analytic_covariances, optimal_sinr, sinr, to_db

__version__ = "0.1.0"
