"""
Seeded random instances: a grid, exponents p(.) and q(.) drawn cellwise-uniform in their
ranges, and function sequences with values uniform in [-amplitude, amplitude].

Bulk suites derive one sub-seed per trial from (master seed, trial index) through
numpy's SeedSequence, so a trial's instance never depends on the trials around it.
"""
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from lib.errors import InputError
from lib.grid import ExponentField, FunctionSequence, Grid, DIMENSIONS

MAX_SEED = 2**64


@dataclass(frozen=True)
class InstanceSpec:
  seed: int = 0
  dimension: int = 1
  cell_count: int = 8
  component_count: int = 2
  p_range: Tuple[float, float] = (1.5, 4.0)
  q_range: Tuple[float, float] = (1.5, 4.0)
  amplitude: float = 1.0
  allow_quasi: bool = False
  nonnegative: bool = False
  total_measure: float = 1.0

  def __post_init__(self) -> None:
    if not 0 <= self.seed < MAX_SEED:
      raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
    if self.dimension not in DIMENSIONS:
      raise InputError(f"dimension must be one of {DIMENSIONS}, got {self.dimension}")
    if self.cell_count < 1 or self.component_count < 1:
      raise InputError("cell_count and component_count must be at least 1")
    if not self.amplitude > 0:
      raise InputError(f"amplitude must be positive (an all-zero instance has nothing to "
                       f"measure), got {self.amplitude!r}")
    if not self.total_measure > 0:
      raise InputError(f"total_measure must be positive, got {self.total_measure!r}")
    floor = 0.0 if self.allow_quasi else 1.0
    for name, (lo, hi) in (('p_range', self.p_range), ('q_range', self.q_range)):
      if not lo <= hi:
        raise InputError(f"{name} must be ordered, got ({lo!r}, {hi!r})")
      if not lo > floor or not np.isfinite(hi):
        bound = "0" if self.allow_quasi else "1 (pass allow_quasi for quasi-norm runs)"
        raise InputError(f"{name} must lie in ({bound}, inf), got ({lo!r}, {hi!r})")

  def with_seed(self, seed: int) -> 'InstanceSpec':
    return replace(self, seed=int(seed))


def trial_seeds(master_seed: int, trials: int) -> List[int]:
  children = np.random.SeedSequence(master_seed).spawn(trials)
  return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _draw_grid(rng: np.random.Generator, spec: InstanceSpec) -> Grid:
  weights = rng.uniform(0.5, 1.5, spec.cell_count)
  return Grid(weights / np.sum(weights) * spec.total_measure, spec.dimension)


def _draw_exponent(rng: np.random.Generator, grid: Grid, bounds, relaxed: bool) -> ExponentField:
  lo, hi = bounds
  return ExponentField(grid, rng.uniform(lo, hi, grid.cell_count), relaxed=relaxed)


def _draw_sequence(rng: np.random.Generator, grid: Grid, spec: InstanceSpec) -> FunctionSequence:
  values = rng.uniform(-spec.amplitude, spec.amplitude, (spec.component_count, grid.cell_count))
  if spec.nonnegative:
    values = np.abs(values)
  if not np.any(values):
    values[0, 0] = spec.amplitude
  return FunctionSequence.from_rows(grid, values)


def _draw_instance(rng: np.random.Generator, spec: InstanceSpec):
  grid = _draw_grid(rng, spec)
  p = _draw_exponent(rng, grid, spec.p_range, spec.allow_quasi)
  q = _draw_exponent(rng, grid, spec.q_range, spec.allow_quasi)
  return _draw_sequence(rng, grid, spec), p, q


def random_instance(spec: InstanceSpec) -> Tuple[FunctionSequence, ExponentField, ExponentField]:
  return _draw_instance(np.random.default_rng(spec.seed), spec)


def random_pair(
    spec: InstanceSpec
) -> Tuple[FunctionSequence, FunctionSequence, ExponentField, ExponentField]:
  """f is exactly random_instance(spec)'s sequence; g is drawn after it on the same grid."""
  rng = np.random.default_rng(spec.seed)
  f, p, q = _draw_instance(rng, spec)
  g = _draw_sequence(rng, f.grid, spec)
  return f, g, p, q


def random_scalar(seed: int, low: float = 1e-6, high: float = 1e6) -> float:
  rng = np.random.default_rng(seed)
  magnitude = float(np.exp(rng.uniform(np.log(low), np.log(high))))
  return magnitude if rng.uniform() < 0.5 else -magnitude
