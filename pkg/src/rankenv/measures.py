"""The five per-curve extremeness measures.

Every measure is oriented so that smaller values mark more extreme curves;
a single critical-value rule (see :mod:`rankenv.envelope`) then serves all
of them. ``rank`` orders curves by their most extreme pointwise rank and is
tie-rich; ``erl``, ``cont`` and ``area`` refine it to an almost-surely
strict ordering; ``qdir`` scores deviations from a central curve against
directional quantile distances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .curves import CurveSet
from .errors import DegenerateDataError, InvalidInputError

MEASURE_KINDS = ("rank", "erl", "cont", "area", "qdir")
RANK_FAMILY = ("rank", "erl", "cont", "area")

DEFAULT_QDIR_BETA = 0.025

# Quantile distances below this fraction of the column range are treated as
# degenerate when building qdir scaling denominators.
DEGENERATE_REL_EPS = 1e-12


@dataclass(frozen=True)
class MeasureVector:
    """Per-curve measure values, smaller = more extreme."""

    kind: str
    m: np.ndarray

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise InvalidInputError(f"unknown measure kind: {self.kind!r}")
        m = np.ascontiguousarray(self.m, dtype=np.float64)
        if m.ndim != 1 or np.isnan(m).any():
            raise InvalidInputError("measure values must be a 1-D array without NaN")
        object.__setattr__(self, "m", m)

    @property
    def n_curves(self) -> int:
        return self.m.size


@dataclass(frozen=True)
class QdirParams:
    """Pointwise central curve and directional quantile distances."""

    t0: np.ndarray
    qlo: np.ndarray
    qup: np.ndarray
    beta: float


def two_sided_pointwise_ranks(curves: CurveSet) -> np.ndarray:
    """Integer two-sided pointwise ranks, one row per curve (int32 s x d)."""
    return kernels.two_sided_ranks(curves.values)


def continuous_pointwise_ranks(curves: CurveSet) -> np.ndarray:
    """Continuous two-sided pointwise ranks (float64 s x d); needs s >= 3."""
    if curves.n_curves < 3:
        raise InvalidInputError("continuous ranks need at least 3 curves")
    return kernels.cont_ranks(curves.values)


def extreme_rank(ranks: np.ndarray) -> MeasureVector:
    """Minimum pointwise rank per curve; a weak (tie-rich) ordering."""
    return MeasureVector("rank", ranks.min(axis=1).astype(np.float64))


def erl_measure(ranks: np.ndarray) -> MeasureVector:
    """Extreme rank length: tie-break extreme ranks lexicographically.

    Sort every curve's pointwise ranks ascending, then score each curve by
    the fraction of curves whose sorted vector is lexicographically <= its
    own. Values lie in (0, 1]; identical rank vectors share a value.
    """
    srt = np.sort(ranks, axis=1)
    _, inverse, counts = np.unique(srt, axis=0, return_inverse=True, return_counts=True)
    le_counts = np.cumsum(counts)
    return MeasureVector("erl", le_counts[inverse] / ranks.shape[0])


def cont_measure(contranks: np.ndarray) -> MeasureVector:
    """Minimum continuous pointwise rank per curve."""
    return MeasureVector("cont", contranks.min(axis=1))


def area_measure(ranks: np.ndarray, contranks: np.ndarray) -> MeasureVector:
    """Extreme rank reduced by the mean continuous-rank deficit below it.

    With k_i the extreme rank of curve i, scores
    k_i - mean_k max(0, k_i - c_ik), which lies in (k_i - 1, k_i] and breaks
    ties by the area of outlyingness below the extreme-rank level.
    """
    k = ranks.min(axis=1).astype(np.float64)
    deficit = np.maximum(0.0, k[:, None] - contranks).mean(axis=1)
    # a subnormal continuous rank makes 1 - c round to exactly 1, which
    # would let the measure collapse onto k - 1 and tie curves across
    # different extreme ranks; pin it strictly inside (k - 1, k]
    floor = np.nextafter(k - 1.0, np.inf)
    return MeasureVector("area", np.maximum(k - deficit, floor))


def qdir_params(curves: CurveSet, beta: float = DEFAULT_QDIR_BETA) -> QdirParams:
    """Pointwise mean and beta/(1-beta) quantiles for the qdir measure.

    Quantiles interpolate order statistics at position (s-1)*p + 1. Quantile
    distances are clamped below at 1e-12 of the pointwise value range so the
    band never inverts; raises :class:`DegenerateDataError` when every point
    is degenerate.
    """
    if not 0.0 < beta < 0.5:
        raise InvalidInputError("beta must be in (0, 0.5)")
    v = curves.values
    t0 = v.mean(axis=0)
    qlo = np.quantile(v, beta, axis=0)
    qup = np.quantile(v, 1.0 - beta, axis=0)
    eps = DEGENERATE_REL_EPS * (v.max(axis=0) - v.min(axis=0))
    if np.all((qup - t0 <= eps) & (t0 - qlo <= eps)):
        raise DegenerateDataError("no usable spread around the central curve")
    qup = np.maximum(qup, t0 + eps)
    qlo = np.minimum(qlo, t0 - eps)
    return QdirParams(t0=t0, qlo=qlo, qup=qup, beta=beta)


def qdir_measure(curves: CurveSet, params: QdirParams) -> MeasureVector:
    """Negated maximum directional deviation from the central curve.

    Deviations above the centre are scaled by qup - t0, below by t0 - qlo;
    the per-curve score is max over grid points, negated so that smaller
    still means more extreme.
    """
    den_up = params.qup - params.t0
    den_lo = params.t0 - params.qlo
    # a zero distance only occurs where every curve equals t0, so the
    # numerator is zero as well; any positive stand-in keeps the ratio at 0
    den_up = np.where(den_up > 0.0, den_up, 1.0)
    den_lo = np.where(den_lo > 0.0, den_lo, 1.0)
    dev = curves.values - params.t0
    u = np.maximum(dev / den_up, -dev / den_lo).max(axis=1)
    return MeasureVector("qdir", -u)


def compute_measure(
    curves: CurveSet, kind: str, beta: float = DEFAULT_QDIR_BETA
) -> MeasureVector:
    """Compute one measure vector from scratch for the given kind."""
    if kind == "rank":
        return extreme_rank(two_sided_pointwise_ranks(curves))
    if kind == "erl":
        return erl_measure(two_sided_pointwise_ranks(curves))
    if kind == "cont":
        return cont_measure(continuous_pointwise_ranks(curves))
    if kind == "area":
        return area_measure(
            two_sided_pointwise_ranks(curves), continuous_pointwise_ranks(curves)
        )
    if kind == "qdir":
        return qdir_measure(curves, qdir_params(curves, beta))
    raise InvalidInputError(f"unknown measure kind: {kind!r}")
