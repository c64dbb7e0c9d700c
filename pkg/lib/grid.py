"""
Discrete representation of the integration domain, of variable exponents and of
piecewise-constant (simple) functions on it.

Only cell measures matter: every modular over a simple function is an exact finite
sum over cells. All values are immutable once constructed.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from lib.errors import InputError

DIMENSIONS = (1, 2, 3)


def _frozen(values, name: str) -> np.ndarray:
  array = np.array(values, dtype=float).reshape(-1)
  if not np.all(np.isfinite(array)):
    raise InputError(f"{name} must be finite")
  array.flags.writeable = False
  return array


@dataclass(frozen=True, eq=False)
class Grid:
  dimension: int
  measures: np.ndarray

  def __init__(self, measures: Iterable[float], dimension: int = 1) -> None:
    if dimension not in DIMENSIONS:
      raise InputError(f"grid dimension must be one of {DIMENSIONS}, got {dimension}")
    measures = _frozen(list(measures), "cell measures")
    if measures.size == 0:
      raise InputError("a grid needs at least one cell")
    bad = np.flatnonzero(measures <= 0)
    if bad.size:
      raise InputError(f"cell {int(bad[0])} has non-positive measure {measures[bad[0]]!r}")
    object.__setattr__(self, 'dimension', dimension)
    object.__setattr__(self, 'measures', measures)

  @property
  def cell_count(self) -> int:
    return int(self.measures.size)

  @property
  def total_measure(self) -> float:
    return float(np.sum(self.measures))

  def same_as(self, other: 'Grid') -> bool:
    return self is other or (self.dimension == other.dimension and
                             np.array_equal(self.measures, other.measures))

  def __eq__(self, other) -> bool:
    return isinstance(other, Grid) and self.same_as(other)

  def __hash__(self) -> int:
    return hash((self.dimension, self.measures.tobytes()))

  def __repr__(self) -> str:
    return (f"Grid(dimension={self.dimension}, cells={self.cell_count}, "
            f"total={self.total_measure!r})")


def require_same_grid(*grids: Grid) -> Grid:
  first = grids[0]
  for other in grids[1:]:
    if not first.same_as(other):
      raise InputError(f"grid mismatch: {first!r} vs {other!r}")
  return first


@dataclass(frozen=True, eq=False)
class ExponentField:
  """
  A variable exponent p(.) or q(.), one value per cell.

  Strict fields satisfy 1 < lower_bound <= upper_bound < inf. A relaxed field only needs
  finite positive values and is flagged non-normable when lower_bound <= 1.
  """
  grid: Grid
  values: np.ndarray
  relaxed: bool

  def __init__(self, grid: Grid, values: Iterable[float], relaxed: bool = False) -> None:
    values = _frozen(list(values), "exponent values")
    if values.size != grid.cell_count:
      raise InputError(f"exponent has {values.size} values for {grid.cell_count} cells")
    floor = 0.0 if relaxed else 1.0
    bad = np.flatnonzero(values <= floor)
    if bad.size:
      kind = "positive" if relaxed else "greater than 1"
      raise InputError(f"exponent value at cell {int(bad[0])} must be {kind}, "
                       f"got {values[bad[0]]!r}")
    object.__setattr__(self, 'grid', grid)
    object.__setattr__(self, 'values', values)
    object.__setattr__(self, 'relaxed', relaxed)

  @classmethod
  def constant(cls, grid: Grid, value: float, relaxed: bool = False) -> 'ExponentField':
    return cls(grid, [value] * grid.cell_count, relaxed)

  @property
  def lower_bound(self) -> float:
    return float(np.min(self.values))

  @property
  def upper_bound(self) -> float:
    return float(np.max(self.values))

  @property
  def normable(self) -> bool:
    return self.lower_bound > 1.0

  @property
  def is_constant(self) -> bool:
    return self.lower_bound == self.upper_bound

  def __eq__(self, other) -> bool:
    return (isinstance(other, ExponentField) and self.grid == other.grid and
            np.array_equal(self.values, other.values) and self.relaxed == other.relaxed)

  def __hash__(self) -> int:
    return hash((self.grid, self.values.tobytes(), self.relaxed))

  def __repr__(self) -> str:
    return (f"ExponentField(cells={self.values.size}, range=[{self.lower_bound!r}, "
            f"{self.upper_bound!r}], relaxed={self.relaxed})")


@dataclass(frozen=True, eq=False)
class SimpleFunction:
  grid: Grid
  values: np.ndarray

  def __init__(self, grid: Grid, values: Iterable[float]) -> None:
    values = _frozen(list(values), "function values")
    if values.size != grid.cell_count:
      raise InputError(f"function has {values.size} values for {grid.cell_count} cells")
    object.__setattr__(self, 'grid', grid)
    object.__setattr__(self, 'values', values)

  @classmethod
  def constant(cls, grid: Grid, value: float) -> 'SimpleFunction':
    return cls(grid, [value] * grid.cell_count)

  @classmethod
  def zero(cls, grid: Grid) -> 'SimpleFunction':
    return cls.constant(grid, 0.0)

  @property
  def is_zero(self) -> bool:
    return not np.any(self.values)

  @property
  def is_nonnegative(self) -> bool:
    return bool(np.all(self.values >= 0))

  def scaled(self, factor: float) -> 'SimpleFunction':
    return SimpleFunction(self.grid, self.values * factor)

  def __add__(self, other: 'SimpleFunction') -> 'SimpleFunction':
    require_same_grid(self.grid, other.grid)
    return SimpleFunction(self.grid, self.values + other.values)

  def __mul__(self, factor: float) -> 'SimpleFunction':
    return self.scaled(factor)

  __rmul__ = __mul__

  def __eq__(self, other) -> bool:
    return (isinstance(other, SimpleFunction) and self.grid == other.grid and
            np.array_equal(self.values, other.values))

  def __hash__(self) -> int:
    return hash((self.grid, self.values.tobytes()))

  def __repr__(self) -> str:
    return f"SimpleFunction({self.values.tolist()!r})"


@dataclass(frozen=True, eq=False)
class FunctionSequence:
  """(f_1, ..., f_N) on one grid; f_nu = 0 for every nu > N."""
  grid: Grid
  components: tuple

  def __init__(self, grid: Grid, components: Sequence[SimpleFunction]) -> None:
    components = tuple(components)
    if not components:
      raise InputError("a function sequence needs at least one component")
    for component in components:
      require_same_grid(grid, component.grid)
    object.__setattr__(self, 'grid', grid)
    object.__setattr__(self, 'components', components)

  @classmethod
  def from_rows(cls, grid: Grid, rows: Iterable[Iterable[float]]) -> 'FunctionSequence':
    return cls(grid, [SimpleFunction(grid, row) for row in rows])

  @property
  def length(self) -> int:
    return len(self.components)

  def __len__(self) -> int:
    return len(self.components)

  def __iter__(self):
    return iter(self.components)

  def __getitem__(self, index: int) -> SimpleFunction:
    return self.components[index]

  @property
  def matrix(self) -> np.ndarray:
    return np.vstack([component.values for component in self.components])

  @property
  def is_zero(self) -> bool:
    return all(component.is_zero for component in self.components)

  @property
  def is_nonnegative(self) -> bool:
    return all(component.is_nonnegative for component in self.components)

  def padded(self, length: int) -> 'FunctionSequence':
    if length <= self.length:
      return self
    zeros = [SimpleFunction.zero(self.grid)] * (length - self.length)
    return FunctionSequence(self.grid, list(self.components) + zeros)

  def scaled(self, factor: float) -> 'FunctionSequence':
    return FunctionSequence(self.grid, [c.scaled(factor) for c in self.components])

  def __add__(self, other: 'FunctionSequence') -> 'FunctionSequence':
    require_same_grid(self.grid, other.grid)
    length = max(self.length, other.length)
    left, right = self.padded(length), other.padded(length)
    return FunctionSequence(self.grid, [a + b for a, b in zip(left, right)])

  def __mul__(self, factor: float) -> 'FunctionSequence':
    return self.scaled(factor)

  __rmul__ = __mul__

  def __eq__(self, other) -> bool:
    return (isinstance(other, FunctionSequence) and self.grid == other.grid and
            self.components == other.components)

  def __hash__(self) -> int:
    return hash((self.grid, self.components))

  def __repr__(self) -> str:
    return f"FunctionSequence(N={self.length}, cells={self.grid.cell_count})"


def nonzero_indices(sequence: FunctionSequence) -> List[int]:
  return [i for i, component in enumerate(sequence) if not component.is_zero]
