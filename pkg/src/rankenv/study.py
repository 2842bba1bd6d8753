"""Factorial Monte Carlo power study over (measure, s, d, scale, outlier).

Each replication draws one pool of curves at base resolution, injects the
outlier into the first curve, and extracts every requested (s, d) cell from
it, mirroring how lower resolutions and smaller sample sizes are nested
subsamples of one simulation batch. Replications are independent work
units with their own derived seeds, so results do not depend on how they
are scheduled across processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy.stats import norm

from . import measures as _m
from .curves import CurveSet
from .envelope import critical_value
from .errors import InvalidInputError
from .gp import BASE_RESOLUTION, OUTLIER_KINDS, GpConfig, extract, inject_outlier, simulate_gp
from .measures import DEFAULT_QDIR_BETA, MEASURE_KINDS

DEFAULT_S_LIST = (20, 40, 80, 160, 320, 640, 1280, 2560, 5120, 10240)
DEFAULT_D_LIST = (20, 100, 500, 2500)
DEFAULT_SCALE_LIST = (0.0, 0.1, 1.0)
DEFAULT_MEMORY_BUDGET = 512 * 1024 * 1024

# Preset sized to finish in minutes on a small desktop machine.
DESK_PROFILE = {
    "s_list": (20, 40, 80, 160, 320, 640),
    "d_list": (20, 100, 500),
    "reps": 500,
}

Z_95 = 1.959964

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ScenarioGrid:
    """Full factorial study specification plus the master seed."""

    master_seed: int
    s_list: tuple = DEFAULT_S_LIST
    d_list: tuple = DEFAULT_D_LIST
    scale_list: tuple = DEFAULT_SCALE_LIST
    outlier_list: tuple = OUTLIER_KINDS
    measures: tuple = MEASURE_KINDS
    alpha: float = 0.05
    reps: int = 1000
    qdir_beta: float = DEFAULT_QDIR_BETA
    shared_pool: bool = True
    memory_budget: int = DEFAULT_MEMORY_BUDGET

    def __post_init__(self):
        s_list = tuple(sorted({int(s) for s in self.s_list}))
        d_list = tuple(sorted({int(d) for d in self.d_list}))
        scale_list = tuple(sorted({float(x) for x in self.scale_list}))
        outliers = tuple(k for k in OUTLIER_KINDS if k in set(self.outlier_list))
        kinds = tuple(k for k in MEASURE_KINDS if k in set(self.measures))
        if len(outliers) != len(set(self.outlier_list)):
            raise InvalidInputError(f"unknown outlier kind in {self.outlier_list}")
        if len(kinds) != len(set(self.measures)):
            raise InvalidInputError(f"unknown measure kind in {self.measures}")
        if not s_list or not d_list or not scale_list or not outliers or not kinds:
            raise InvalidInputError("scenario grid has an empty dimension")
        if s_list[0] < 2:
            raise InvalidInputError("sample sizes must be >= 2")
        if s_list[0] < 3 and ("cont" in kinds or "area" in kinds):
            raise InvalidInputError("cont/area measures need at least 3 curves")
        for d in d_list:
            if d < 1 or BASE_RESOLUTION % d != 0:
                raise InvalidInputError(f"resolution {d} does not divide {BASE_RESOLUTION}")
        if scale_list[0] < 0.0:
            raise InvalidInputError("correlation scales must be >= 0")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInputError("alpha must be in (0, 1)")
        if self.reps < 1:
            raise InvalidInputError("need at least one replication")
        object.__setattr__(self, "s_list", s_list)
        object.__setattr__(self, "d_list", d_list)
        object.__setattr__(self, "scale_list", scale_list)
        object.__setattr__(self, "outlier_list", outliers)
        object.__setattr__(self, "measures", kinds)


@dataclass(frozen=True)
class PowerEstimate:
    """Detection rate for one (measure, s, d, scale, outlier) cell."""

    measure: str
    s: int
    d: int
    scale: float
    outlier: str
    reps: int
    detections: int
    power: float
    ci_lo: float
    ci_hi: float


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _mix(*parts: int) -> int:
    h = 0
    for p in parts:
        h = _splitmix64((h ^ p) & _MASK64)
    return h


def rep_seed(master_seed: int, scale: float, outlier: str, rep_index: int) -> int:
    """Stable 64-bit stream seed for one replication.

    Chains splitmix64 over the master seed, the bit pattern of the scale,
    the outlier code and the replication index. The derivation is part of
    the output contract and does not change between versions.
    """
    scale_bits = int(np.float64(scale).view(np.uint64))
    return _mix(master_seed, scale_bits, OUTLIER_KINDS.index(outlier), rep_index)


def _cell_seed(master_seed, scale, outlier, rep_index, s, d) -> int:
    scale_bits = int(np.float64(scale).view(np.uint64))
    return _mix(master_seed, scale_bits, OUTLIER_KINDS.index(outlier), rep_index, s, d)


def detect_first(
    curves: CurveSet, kind: str, alpha: float, qdir_beta: float = DEFAULT_QDIR_BETA
) -> bool:
    """Whether the first curve falls strictly below the critical value."""
    return _detect_battery(curves, (kind,), alpha, qdir_beta)[kind]


def _detect_battery(curves, kinds, alpha, qdir_beta):
    """First-curve detection flags for several measures, sharing the rank work."""
    ranks = None
    if any(k in ("rank", "erl", "area") for k in kinds):
        ranks = _m.two_sided_pointwise_ranks(curves)
    contranks = None
    if any(k in ("cont", "area") for k in kinds):
        contranks = _m.continuous_pointwise_ranks(curves)
    out = {}
    for kind in kinds:
        if kind == "rank":
            mv = _m.extreme_rank(ranks)
        elif kind == "erl":
            mv = _m.erl_measure(ranks)
        elif kind == "cont":
            mv = _m.cont_measure(contranks)
        elif kind == "area":
            mv = _m.area_measure(ranks, contranks)
        elif kind == "qdir":
            mv = _m.qdir_measure(curves, _m.qdir_params(curves, qdir_beta))
        else:
            raise InvalidInputError(f"unknown measure kind: {kind!r}")
        out[kind] = bool(mv.m[0] < critical_value(mv, alpha))
    return out


def run_rep(grid: ScenarioGrid, scale: float, outlier: str, rep_index: int) -> np.ndarray:
    """Detection flags for one replication, shape (s_list, d_list, measures).

    In the default shared-pool mode one max(s_list)-row pool serves every
    (s, d) cell. When that pool would exceed the memory budget, each cell
    regenerates just its own rows from the same per-row streams, which are
    bit-identical to the shared pool's prefix.
    """
    n_s, n_d = len(grid.s_list), len(grid.d_list)
    out = np.zeros((n_s, n_d, len(grid.measures)), dtype=bool)
    if grid.shared_pool:
        seed = rep_seed(grid.master_seed, scale, outlier, rep_index)
        s_max = max(grid.s_list)
        if s_max * BASE_RESOLUTION * 8 <= grid.memory_budget:
            pool = inject_outlier(simulate_gp(GpConfig(scale=scale, seed=seed), s_max), outlier)

            def cell(s, d):
                return extract(pool, s, d)
        else:
            def cell(s, d):
                small = simulate_gp(GpConfig(scale=scale, seed=seed), s)
                return extract(inject_outlier(small, outlier), s, d)

    else:
        def cell(s, d):
            seed = _cell_seed(grid.master_seed, scale, outlier, rep_index, s, d)
            small = simulate_gp(GpConfig(scale=scale, seed=seed), s)
            return extract(inject_outlier(small, outlier), s, d)

    for i_s, s in enumerate(grid.s_list):
        for i_d, d in enumerate(grid.d_list):
            flags = _detect_battery(cell(s, d), grid.measures, grid.alpha, grid.qdir_beta)
            out[i_s, i_d] = [flags[k] for k in grid.measures]
    return out


def _rep_worker(args):
    return run_rep(*args)


def run_study(grid: ScenarioGrid, threads: int = 1, progress=None) -> list[PowerEstimate]:
    """Aggregate detection rates over all replications and grid cells.

    Detection counts are summed per cell, so the result is identical for
    any thread count. ``progress(done, total, label)`` is invoked after
    every finished replication when given.
    """
    total = len(grid.outlier_list) * len(grid.scale_list) * grid.reps
    done = 0
    rows: list[PowerEstimate] = []
    for outlier in grid.outlier_list:
        for scale in grid.scale_list:
            label = f"outlier={outlier} scale={scale:g}"
            acc = np.zeros((len(grid.s_list), len(grid.d_list), len(grid.measures)), np.int64)
            jobs = ((grid, scale, outlier, r) for r in range(1, grid.reps + 1))
            if threads > 1:
                chunk = max(1, grid.reps // (threads * 8))
                with ProcessPoolExecutor(max_workers=threads) as ex:
                    for det in ex.map(_rep_worker, jobs, chunksize=chunk):
                        acc += det
                        done += 1
                        if progress is not None:
                            progress(done, total, label)
            else:
                for job in jobs:
                    acc += run_rep(*job)
                    done += 1
                    if progress is not None:
                        progress(done, total, label)
            for i_s, s in enumerate(grid.s_list):
                for i_d, d in enumerate(grid.d_list):
                    for i_m, kind in enumerate(grid.measures):
                        det = int(acc[i_s, i_d, i_m])
                        lo, hi = wilson_ci(det, grid.reps)
                        rows.append(
                            PowerEstimate(
                                measure=kind,
                                s=s,
                                d=d,
                                scale=scale,
                                outlier=outlier,
                                reps=grid.reps,
                                detections=det,
                                power=det / grid.reps,
                                ci_lo=lo,
                                ci_hi=hi,
                            )
                        )
    return rows


def wilson_ci(detections: int, reps: int, level: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if reps < 1 or not 0 <= detections <= reps:
        raise InvalidInputError("detections must lie in [0, reps], reps >= 1")
    z = Z_95 if level == 0.95 else float(norm.ppf(0.5 + 0.5 * level))
    p = detections / reps
    z2 = z * z
    denom = 1.0 + z2 / reps
    centre = (p + z2 / (2.0 * reps)) / denom
    half = z * sqrt(p * (1.0 - p) / reps + z2 / (4.0 * reps * reps)) / denom
    # the interval collapses onto the boundary exactly at p = 0 and p = 1;
    # spell that out rather than trusting sqrt rounding
    lo = 0.0 if detections == 0 else max(0.0, centre - half)
    hi = 1.0 if detections == reps else min(1.0, centre + half)
    return lo, hi
