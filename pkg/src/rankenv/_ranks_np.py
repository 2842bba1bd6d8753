"""Pure-NumPy implementations of the pointwise ranking kernels.

The compiled extension in ``_ranks_ext`` mirrors these definitions; integer
ranks match bit for bit, continuous ranks match up to the last ulp of the
platform exp().
"""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata

# Spacings below this fraction of the column range count as degenerate ties.
DEGENERATE_REL_EPS = 1e-12
# Cap on the exponent ratio so exp(-ratio) stays a positive float64.
MAX_EXP_RATIO = 700.0


def two_sided_ranks(values: np.ndarray) -> np.ndarray:
    """Two-sided pointwise competition ranks (int32), smaller = more extreme.

    At each grid point a curve scores min(1 + #{smaller}, 1 + #{larger});
    tied curves share the smaller count on each side.
    """
    r_low = rankdata(values, method="min", axis=0)
    r_high = rankdata(-values, method="min", axis=0)
    return np.minimum(r_low, r_high).astype(np.int32)


def cont_ranks(values: np.ndarray) -> np.ndarray:
    """Continuous two-sided pointwise ranks (float64), smaller = more extreme.

    Each curve is scored from below and from above by interpolating its
    position between its neighbours at every grid point; the smaller score
    wins. With distinct values the result lies in (R-1, R] for the matching
    integer two-sided rank R. Needs at least 3 curves.
    """
    lower = _lower_cont_ranks(values)
    upper = _lower_cont_ranks(-values)
    return np.minimum(lower, upper)


def _lower_cont_ranks(values: np.ndarray) -> np.ndarray:
    s, d = values.shape
    order = np.argsort(values, axis=0, kind="stable")
    y = np.take_along_axis(values, order, axis=0)
    eps = DEGENERATE_REL_EPS * (y[-1] - y[0])

    scores = np.empty((s, d))
    # interior position p (0-based) scores p + (y[p]-y[p-1]) / (y[p+1]-y[p-1])
    num = y[1:-1] - y[:-2]
    den = y[2:] - y[:-2]
    frac = np.divide(num, den, out=np.full_like(num, 0.5), where=den > eps)
    scores[1:-1] = np.arange(1, s - 1)[:, None] + frac
    # lowest value: gap to the runner-up relative to the spread above it,
    # squashed through exp so the score stays in (0, 1]
    den0 = y[-1] - y[1]
    ratio = np.divide(y[1] - y[0], den0, out=np.zeros(d), where=den0 > eps)
    scores[0] = np.where(den0 > eps, np.exp(-np.minimum(ratio, MAX_EXP_RATIO)), 0.5)
    scores[-1] = float(s)

    ranked = np.empty_like(scores)
    np.put_along_axis(ranked, order, scores, axis=0)
    return ranked
