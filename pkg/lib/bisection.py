"""
Bracket-then-bisect root finding for strictly decreasing functions of a positive
variable, several independent problems at a time.

Every problem i solves g_i(t) = target for t > 0. The search runs on s = log(t), so a
bisection width of rel_tolerance in s is a relative tolerance in t. Each problem is
frozen as soon as it has converged, which makes its root independent of whatever
other problems share the batch.
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from lib.errors import NonConvergenceError
from lib.solver_config import SolverConfig

# fn(log_t, indices) -> values of g_i at t = exp(log_t) for the problems in `indices`.
BatchFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BisectionResult:
  """`roots` are bracket midpoints; `upper` are the bracket ends where g <= target held."""
  roots: np.ndarray
  upper: np.ndarray
  iterations: np.ndarray
  expansions: np.ndarray
  log_lower: np.ndarray
  log_upper: np.ndarray

  @property
  def root(self) -> float:
    return float(self.roots[0])


def solve_decreasing(fn: BatchFunction,
                     log_guess: np.ndarray,
                     cfg: SolverConfig,
                     target: float = 1.0,
                     labels=None,
                     log_upper=None) -> BisectionResult:
  """
  `labels` names each problem in error messages (defaults to its 1-based position).

  With `log_upper` the caller supplies the bracket [log_guess, log_upper], g > target at
  its lower end and g <= target at its upper end, and no expansion takes place.
  """
  log_guess = np.array(log_guess, dtype=float).reshape(-1)
  count = log_guess.size
  labels = list(labels) if labels is not None else list(range(1, count + 1))
  step = math.log(cfg.bracket_growth)

  everyone = np.arange(count)
  if log_upper is not None:
    lo = log_guess.copy()
    hi = np.array(log_upper, dtype=float).reshape(-1)
  else:
    lo = np.full(count, -np.inf)
    hi = np.full(count, np.inf)
    above = fn(log_guess, everyone) > target
    lo[above] = log_guess[above]
    hi[~above] = log_guess[~above]

  expansions = np.zeros(count, dtype=int)
  pending = everyone[~(np.isfinite(lo) & np.isfinite(hi))]
  while pending.size:
    if np.any(expansions[pending] >= cfg.max_bracket_expansions):
      stuck = pending[expansions[pending] >= cfg.max_bracket_expansions][0]
      raise NonConvergenceError(
          f"no bracket after {cfg.max_bracket_expansions} expansions "
          f"(growth {cfg.bracket_growth!r})", labels[stuck])
    expansions[pending] += 1
    grow = np.isfinite(lo[pending])
    trial = np.where(grow, lo[pending] + step, hi[pending] - step)
    is_above = fn(trial, pending) > target
    # A trial on the growing side that is still above target moves lo up; one that
    # drops below closes the bracket. Symmetrically for the shrinking side.
    lo[pending] = np.where(is_above, trial, lo[pending])
    hi[pending] = np.where(is_above, hi[pending], trial)
    pending = pending[~(np.isfinite(lo[pending]) & np.isfinite(hi[pending]))]

  iterations = np.zeros(count, dtype=int)
  active = everyone[(hi - lo) > cfg.rel_tolerance]
  while active.size:
    if np.any(iterations[active] >= cfg.max_bisection_iters):
      stuck = active[iterations[active] >= cfg.max_bisection_iters][0]
      raise NonConvergenceError(
          f"bisection did not reach rel_tolerance {cfg.rel_tolerance!r} in "
          f"{cfg.max_bisection_iters} iterations", labels[stuck])
    iterations[active] += 1
    mid = 0.5 * (lo[active] + hi[active])
    exhausted = (mid == lo[active]) | (mid == hi[active])
    is_above = fn(mid, active) > target
    lo[active] = np.where(is_above, mid, lo[active])
    hi[active] = np.where(is_above, hi[active], mid)
    width = hi[active] - lo[active]
    active = active[(width > cfg.rel_tolerance) & ~exhausted]

  with np.errstate(over='ignore'):
    roots = np.exp(0.5 * (lo + hi))
    upper = np.exp(hi)
  return BisectionResult(roots, upper, iterations, expansions, lo, hi)
