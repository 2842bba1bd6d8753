"""Critical values and global envelopes with exact membership semantics.

A curve lies outside the envelope at some grid point if and only if its
measure falls strictly below the critical value; this holds simultaneously
for every curve in the set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import CurveSet
from .errors import InvalidInputError
from .measures import MeasureVector, QdirParams

# Inclusive guard for the "count <= alpha*s" comparison, so integer
# boundaries do not flip with platform rounding of alpha*s.
CRIT_COUNT_GUARD = 1e-9


@dataclass(frozen=True)
class GlobalEnvelope:
    """Pointwise bounds plus the critical value that generated them.

    ``kept`` holds the indices of curves whose measure is >= ``crit``; these
    are exactly the curves that stay inside [lower, upper] everywhere.
    """

    lower: np.ndarray
    upper: np.ndarray
    crit: float
    kept: np.ndarray
    alpha: float


def critical_value(measures: MeasureVector, alpha: float) -> float:
    """Largest measure value with at most alpha*s strictly smaller ones."""
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError("alpha must be in (0, 1)")
    m = np.sort(measures.m)
    s = m.size
    # count of strictly smaller values = first index of each run of equals
    is_new = np.empty(s, dtype=bool)
    is_new[0] = True
    is_new[1:] = m[1:] > m[:-1]
    first = np.maximum.accumulate(np.where(is_new, np.arange(s), 0))
    ok = first <= alpha * s * (1.0 + CRIT_COUNT_GUARD)
    return float(m[ok][-1])


def classify(measures: MeasureVector, crit: float) -> np.ndarray:
    """Boolean flags: True where a curve is more extreme than ``crit``."""
    return measures.m < crit


def build_envelope(
    curves: CurveSet,
    measures: MeasureVector,
    alpha: float,
    qdir: QdirParams | None = None,
) -> GlobalEnvelope:
    """Construct the global envelope for the given measure vector.

    For the rank-family measures the bounds are the pointwise hull of the
    kept curves. For qdir they are the central curve offset by the critical
    deviation times the directional quantile distances; ``qdir`` params are
    required for that kind and ignored otherwise.
    """
    if measures.n_curves != curves.n_curves:
        raise InvalidInputError("measures and curves disagree on the number of curves")
    crit = critical_value(measures, alpha)
    kept = np.flatnonzero(measures.m >= crit)
    kept_vals = curves.values[kept]
    if measures.kind == "qdir":
        if qdir is None:
            raise InvalidInputError("qdir envelopes need the matching QdirParams")
        u = -crit
        lower = qdir.t0 - u * (qdir.t0 - qdir.qlo)
        upper = qdir.t0 + u * (qdir.qup - qdir.t0)
        # rounding in u*(...) may land a boundary curve an ulp outside the
        # band; widen to the kept hull so membership stays exact
        lower = np.minimum(lower, kept_vals.min(axis=0))
        upper = np.maximum(upper, kept_vals.max(axis=0))
    else:
        lower = kept_vals.min(axis=0)
        upper = kept_vals.max(axis=0)
    return GlobalEnvelope(lower=lower, upper=upper, crit=crit, kept=kept, alpha=alpha)


def central_curve(
    curves: CurveSet,
    envelope: GlobalEnvelope,
    kind: str,
    qdir: QdirParams | None = None,
) -> np.ndarray:
    """Representative central curve: kept-curve median, or t0 for qdir."""
    if kind == "qdir":
        if qdir is None:
            raise InvalidInputError("qdir central curve needs the matching QdirParams")
        return qdir.t0
    return np.median(curves.values[envelope.kept], axis=0)
