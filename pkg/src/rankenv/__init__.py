"""Global envelope tests for sets of discretized functions.

Five extremeness measures over a set of curves — extreme rank, extreme
rank length, continuous rank, area rank and directional quantile — with
envelopes whose pointwise bounds agree exactly with the measure-based
test verdict, plus a Gaussian-process scenario generator and a Monte
Carlo power-study harness.
"""

from .curves import CurveSet
from .envelope import GlobalEnvelope, build_envelope, central_curve, classify, critical_value
from .errors import DegenerateDataError, InvalidInputError, RankEnvError
from .gp import (
    BASE_RESOLUTION,
    OUTLIER_KINDS,
    CurvePool,
    GpConfig,
    extract,
    inject_outlier,
    outlier_value,
    simulate_gp,
)
from .kernels import BACKEND
from .measures import (
    DEFAULT_QDIR_BETA,
    MEASURE_KINDS,
    RANK_FAMILY,
    MeasureVector,
    QdirParams,
    area_measure,
    compute_measure,
    cont_measure,
    continuous_pointwise_ranks,
    erl_measure,
    extreme_rank,
    qdir_measure,
    qdir_params,
    two_sided_pointwise_ranks,
)
from .study import (
    DESK_PROFILE,
    PowerEstimate,
    ScenarioGrid,
    detect_first,
    rep_seed,
    run_rep,
    run_study,
    wilson_ci,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BASE_RESOLUTION",
    "CurvePool",
    "CurveSet",
    "DEFAULT_QDIR_BETA",
    "DESK_PROFILE",
    "DegenerateDataError",
    "GlobalEnvelope",
    "GpConfig",
    "InvalidInputError",
    "MEASURE_KINDS",
    "MeasureVector",
    "OUTLIER_KINDS",
    "PowerEstimate",
    "QdirParams",
    "RANK_FAMILY",
    "RankEnvError",
    "ScenarioGrid",
    "area_measure",
    "build_envelope",
    "central_curve",
    "classify",
    "compute_measure",
    "cont_measure",
    "continuous_pointwise_ranks",
    "critical_value",
    "detect_first",
    "erl_measure",
    "extract",
    "extreme_rank",
    "inject_outlier",
    "outlier_value",
    "qdir_measure",
    "qdir_params",
    "rep_seed",
    "run_rep",
    "run_study",
    "simulate_gp",
    "two_sided_pointwise_ranks",
    "wilson_ci",
]
