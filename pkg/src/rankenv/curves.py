"""Container for a set of curves sampled on a common grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class CurveSet:
    """s curves of length d sharing a strictly increasing grid in [0, 1].

    ``values[i, k]`` is curve i at grid point k. By convention the first
    curve (row 0) is the curve under test.
    """

    values: np.ndarray
    grid: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        grid = np.ascontiguousarray(self.grid, dtype=np.float64)
        if values.ndim != 2:
            raise InvalidInputError("curve values must form a 2-D array")
        s, d = values.shape
        if s < 2:
            raise InvalidInputError(f"need at least 2 curves, got {s}")
        if d < 1:
            raise InvalidInputError("curves must have at least one grid point")
        if not np.isfinite(values).all():
            raise InvalidInputError("curve values must be finite")
        if grid.shape != (d,):
            raise InvalidInputError(
                f"grid length {grid.shape} does not match {d} grid points"
            )
        if not np.isfinite(grid).all() or grid[0] < 0.0 or grid[-1] > 1.0:
            raise InvalidInputError("grid must lie within [0, 1]")
        if d > 1 and not np.all(np.diff(grid) > 0.0):
            raise InvalidInputError("grid must be strictly increasing")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "grid", grid)

    @property
    def n_curves(self) -> int:
        return self.values.shape[0]

    @property
    def n_points(self) -> int:
        return self.values.shape[1]

    @classmethod
    def from_values(cls, values) -> "CurveSet":
        """Attach the uniform grid {1/d, 2/d, ..., 1} to a value matrix."""
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise InvalidInputError("curve values must form a 2-D array")
        d = values.shape[1]
        return cls(values, np.arange(1, d + 1) / d)
