import pytest
from hypothesis import settings

from lib.grid import ExponentField, FunctionSequence, Grid
from lib.solver_config import SolverConfig

settings.register_profile("varmix", max_examples=40, deadline=None)
settings.load_profile("varmix")


@pytest.fixture
def cfg():
  return SolverConfig()


@pytest.fixture
def unit_grid():
  """A single cell of measure 1."""
  return Grid([1.0])


@pytest.fixture
def half_grid():
  """Two cells of measure 0.5."""
  return Grid([0.5, 0.5])


@pytest.fixture
def constant_fields():

  def build(grid, p, q, relaxed=False):
    return (ExponentField.constant(grid, p, relaxed=relaxed),
            ExponentField.constant(grid, q, relaxed=relaxed))

  return build


@pytest.fixture
def sequence():

  def build(grid, *rows):
    return FunctionSequence.from_rows(grid, rows)

  return build
