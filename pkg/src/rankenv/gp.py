"""Discretized Gaussian processes with exponential correlation on [0, 1].

A stationary process with corr(X(x), X(x')) = exp(-|x - x'| / scale) is
Markov on a regular grid, so every row can be drawn exactly by the
first-order recursion X[0] ~ N(0,1), X[k] = rho*X[k-1] + sqrt(1-rho^2)*Z[k]
with rho = exp(-dx/scale); scale 0 is the independent limit (rho = 0).

Each row comes from its own counter-based stream keyed by (seed, row), so
pools are reproducible bit for bit regardless of how rows are scheduled
across threads, and regenerating only a prefix of the rows yields exactly
the same curves.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .curves import CurveSet
from .errors import InvalidInputError

BASE_RESOLUTION = 2500

OUTLIER_KINDS = ("none", "integral", "maximum")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GpConfig:
    """Correlation scale, grid resolution and stream seed for one process."""

    scale: float
    base_resolution: int = BASE_RESOLUTION
    seed: int = 0

    def __post_init__(self):
        if self.scale < 0.0:
            raise InvalidInputError("correlation scale must be >= 0")
        if self.base_resolution < 2:
            raise InvalidInputError("base resolution must be >= 2")


@dataclass(frozen=True)
class CurvePool:
    """Realizations at base resolution, one independent process per row."""

    values: np.ndarray
    grid: np.ndarray
    seed: int
    scale: float

    @property
    def n_curves(self) -> int:
        return self.values.shape[0]

    @property
    def resolution(self) -> int:
        return self.values.shape[1]


def _row_noise(seed: int, row: int, n_points: int) -> np.ndarray:
    key = np.array([seed & _MASK64, row], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).standard_normal(n_points)


def simulate_gp(config: GpConfig, n: int, threads: int = 1) -> CurvePool:
    """Draw n independent realizations on the grid {1/D, 2/D, ..., 1}."""
    if n < 1:
        raise InvalidInputError("need at least one realization")
    res = config.base_resolution
    noise = np.empty((n, res))
    if threads > 1:
        def _fill(i):
            noise[i] = _row_noise(config.seed, i, res)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(_fill, range(n)))
    else:
        for i in range(n):
            noise[i] = _row_noise(config.seed, i, res)
    values = _ar1_paths(noise, config.scale, 1.0 / res)
    grid = np.arange(1, res + 1) / res
    return CurvePool(values=values, grid=grid, seed=config.seed, scale=config.scale)


def _ar1_paths(noise: np.ndarray, scale: float, dx: float) -> np.ndarray:
    if scale == 0.0:
        return noise
    rho = float(np.exp(-dx / scale))
    noise[:, 1:] *= np.sqrt(1.0 - rho * rho)
    return lfilter([1.0], [1.0, -rho], noise, axis=1)


def outlier_value(kind: str, x):
    """Deterministic contamination added to the first curve, evaluated at x."""
    x = np.asarray(x, dtype=np.float64)
    if kind == "none":
        return np.zeros_like(x)
    if kind == "integral":
        return 5.0 * x * (1.0 - x)
    if kind == "maximum":
        return np.where(x <= 0.1, 100.0 * x * (1.0 - 10.0 * x), 0.0)
    raise InvalidInputError(f"unknown outlier kind: {kind!r}")


def inject_outlier(pool: CurvePool, kind: str) -> CurvePool:
    """Add the outlier to the first curve; all other rows stay untouched."""
    if kind == "none":
        return pool
    values = pool.values.copy()
    values[0] += outlier_value(kind, pool.grid)
    return CurvePool(values=values, grid=pool.grid, seed=pool.seed, scale=pool.scale)


def extract(pool: CurvePool, s: int, d: int) -> CurveSet:
    """First s curves restricted to the regular subgrid {1/d, ..., 1}.

    d must divide the pool resolution; the first pool row stays curve 0.
    """
    res = pool.resolution
    if s < 2 or s > pool.n_curves:
        raise InvalidInputError(
            f"requested {s} curves from a pool of {pool.n_curves}"
        )
    if d < 1 or res % d != 0:
        raise InvalidInputError(f"resolution {d} does not divide {res}")
    step = res // d
    cols = np.arange(step - 1, res, step)
    return CurveSet(values=pool.values[:s, cols], grid=pool.grid[cols])
