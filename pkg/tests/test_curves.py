"""CurveSet container validation."""

import numpy as np
import pytest

from rankenv import CurveSet, InvalidInputError


def test_from_values_attaches_uniform_grid():
    cs = CurveSet.from_values(np.zeros((3, 4)) + np.arange(3)[:, None])
    assert cs.grid.tolist() == [0.25, 0.5, 0.75, 1.0]
    assert cs.n_curves == 3
    assert cs.n_points == 4
    assert cs.values.dtype == np.float64
    assert cs.values.flags.c_contiguous


def test_rejects_bad_shapes():
    with pytest.raises(InvalidInputError):
        CurveSet.from_values(np.zeros(5))  # not 2-D
    with pytest.raises(InvalidInputError):
        CurveSet.from_values(np.zeros((1, 5)))  # single curve
    with pytest.raises(InvalidInputError):
        CurveSet.from_values(np.zeros((3, 0)))  # no points


def test_rejects_nonfinite_values():
    v = np.zeros((2, 3))
    v[1, 2] = np.inf
    with pytest.raises(InvalidInputError):
        CurveSet.from_values(v)
    v[1, 2] = np.nan
    with pytest.raises(InvalidInputError):
        CurveSet.from_values(v)


def test_grid_constraints():
    v = np.zeros((2, 3))
    with pytest.raises(InvalidInputError):
        CurveSet(v, np.array([0.1, 0.2]))  # wrong length
    with pytest.raises(InvalidInputError):
        CurveSet(v, np.array([0.3, 0.2, 0.4]))  # not increasing
    with pytest.raises(InvalidInputError):
        CurveSet(v, np.array([0.2, 0.2, 0.4]))  # not strictly increasing
    with pytest.raises(InvalidInputError):
        CurveSet(v, np.array([-0.1, 0.2, 0.4]))  # below 0
    with pytest.raises(InvalidInputError):
        CurveSet(v, np.array([0.1, 0.2, 1.4]))  # above 1
    cs = CurveSet(v, np.array([0.0, 0.5, 1.0]))
    assert cs.grid.tolist() == [0.0, 0.5, 1.0]


def test_integer_input_is_coerced():
    cs = CurveSet.from_values(np.array([[1, 2], [3, 4]]))
    assert cs.values.dtype == np.float64
