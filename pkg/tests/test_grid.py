import numpy as np
import pytest

from lib.errors import InputError
from lib.grid import ExponentField, FunctionSequence, Grid, SimpleFunction, nonzero_indices, \
    require_same_grid


def test_grid_rejects_non_positive_measure():
  with pytest.raises(InputError, match="cell 1"):
    Grid([0.5, 0.0, 0.5])


def test_grid_rejects_bad_dimension_and_empty():
  with pytest.raises(InputError):
    Grid([1.0], dimension=4)
  with pytest.raises(InputError):
    Grid([])


def test_grid_total_and_equality():
  grid = Grid([0.5] * 4, dimension=2)
  assert grid.cell_count == 4
  assert grid.total_measure == pytest.approx(2.0)
  assert grid == Grid([0.5] * 4, dimension=2)
  assert grid != Grid([0.5] * 4)


def test_values_are_read_only():
  grid = Grid([1.0, 1.0])
  with pytest.raises(ValueError):
    grid.measures[0] = 3.0
  f = SimpleFunction(grid, [1.0, 2.0])
  with pytest.raises(ValueError):
    f.values[0] = 0.0


def test_strict_exponent_rejects_one():
  grid = Grid([0.5, 0.5])
  with pytest.raises(InputError, match="cell 1"):
    ExponentField(grid, [2.0, 1.0])


def test_relaxed_exponent_is_not_normable():
  grid = Grid([0.5, 0.5])
  p = ExponentField(grid, [0.5, 3.0], relaxed=True)
  assert not p.normable
  assert (p.lower_bound, p.upper_bound) == (0.5, 3.0)
  with pytest.raises(InputError):
    ExponentField(grid, [0.0, 3.0], relaxed=True)


def test_exponent_rejects_infinity_and_wrong_length():
  grid = Grid([1.0, 1.0])
  with pytest.raises(InputError):
    ExponentField(grid, [2.0, np.inf])
  with pytest.raises(InputError):
    ExponentField(grid, [2.0])


def test_simple_function_arithmetic():
  grid = Grid([1.0, 1.0])
  f = SimpleFunction(grid, [1.0, -2.0])
  g = SimpleFunction(grid, [0.5, 0.5])
  assert (f + g) == SimpleFunction(grid, [1.5, -1.5])
  assert 2 * f == f.scaled(2.0)
  assert not f.is_nonnegative
  assert SimpleFunction.zero(grid).is_zero


def test_sequence_padding_and_sum():
  grid = Grid([1.0])
  f = FunctionSequence.from_rows(grid, [[1.0]])
  g = FunctionSequence.from_rows(grid, [[2.0], [3.0]])
  total = f + g
  assert total.length == 2
  np.testing.assert_array_equal(total.matrix, [[3.0], [3.0]])
  assert f.padded(3).length == 3
  assert f.padded(3)[2].is_zero


def test_sequence_requires_one_grid():
  with pytest.raises(InputError):
    FunctionSequence(Grid([1.0]), [SimpleFunction(Grid([2.0]), [1.0])])
  with pytest.raises(InputError):
    FunctionSequence(Grid([1.0]), [])
  with pytest.raises(InputError, match="grid mismatch"):
    require_same_grid(Grid([1.0]), Grid([1.0, 1.0]))


def test_nonzero_indices():
  grid = Grid([1.0, 1.0])
  f = FunctionSequence.from_rows(grid, [[0.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
  assert nonzero_indices(f) == [1]
