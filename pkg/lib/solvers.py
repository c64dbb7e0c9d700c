"""
Luxemburg norm, per-component weights lambda_nu*, the mixed modular and the mixed norm.

Every infimum here is the unique root of a strictly decreasing continuous function of
a positive scale (finite exponents), so each one is solved with the bracketing
bisection in lib.bisection. The mixed norm nests the component solves inside the
outer scale solve; inner brackets run at rel_tolerance / 10.
"""
import bisect
import math
import warnings
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from lib.bisection import BisectionResult, solve_decreasing
from lib.errors import InputError, NonConvergenceError, PremiseError, QuasiNormWarning
from lib.grid import ExponentField, FunctionSequence, SimpleFunction, nonzero_indices, \
    require_same_grid
from lib.modular import ModularKernel
from lib.solver_config import SolverConfig

# Positivity floor used when a probe needs every zeta_nu > 0.
WITNESS_FLOOR = 1e-300

# Width of the outer log(mu) bracket beyond its bounds, in units of rel_tolerance.
OUTER_PAD_TOLERANCES = 1000.0

LOG_WEIGHT_CAP = 700.0


@dataclass(frozen=True, eq=False)
class ComponentWeights:
  weights: tuple
  total: float

  def __init__(self, weights) -> None:
    weights = tuple(float(w) for w in weights)
    if any(not w >= 0 or not math.isfinite(w) for w in weights):
      raise InputError(f"component weights must be finite and nonnegative: {weights!r}")
    object.__setattr__(self, 'weights', weights)
    object.__setattr__(self, 'total', math.fsum(weights))

  def __len__(self) -> int:
    return len(self.weights)

  def __getitem__(self, index: int) -> float:
    return self.weights[index]

  def floored(self, floor: float = WITNESS_FLOOR) -> 'ComponentWeights':
    return ComponentWeights([max(w, floor) for w in self.weights])

  def __eq__(self, other) -> bool:
    return isinstance(other, ComponentWeights) and self.weights == other.weights

  def __hash__(self) -> int:
    return hash(self.weights)

  def __repr__(self) -> str:
    return f"ComponentWeights({list(self.weights)!r}, total={self.total!r})"


@dataclass(frozen=True)
class NormDiagnostics:
  outer_iterations: int
  outer_expansions: int
  inner_evaluations: int

  def __str__(self) -> str:
    return (f"outer iterations: {self.outer_iterations}, bracket expansions: "
            f"{self.outer_expansions}, inner evaluations: {self.inner_evaluations}")


def _warn_if_relaxed(*exponents: ExponentField) -> None:
  if not all(e.normable for e in exponents):
    warnings.warn("exponent lower bound <= 1; the value is a quasi-norm", QuasiNormWarning)


def _bracket_pad(cfg: SolverConfig) -> float:
  return math.log(cfg.bracket_growth)


def _weight_sum(log_weights: np.ndarray) -> float:
  # Capped so the exact sum cannot overflow; any capped term already exceeds 1.
  return math.fsum(np.exp(np.minimum(log_weights, LOG_WEIGHT_CAP)))


def luxemburg_norm(f: SimpleFunction, p: ExponentField, cfg: SolverConfig) -> float:
  require_same_grid(f.grid, p.grid)
  _warn_if_relaxed(p)
  if f.is_zero:
    return 0.0
  kernel = ModularKernel.for_norm(FunctionSequence(f.grid, [f]), p)

  def modular_at(log_mu, index):
    return kernel.evaluate(log_mu, saturate=True)

  lo, hi = kernel.log_bracket(pad=_bracket_pad(cfg))
  return solve_decreasing(modular_at, lo, cfg, log_upper=hi).root


class _ComponentSolver:

  def __init__(self, sequence: FunctionSequence, p: ExponentField, q: ExponentField) -> None:
    require_same_grid(sequence.grid, p.grid, q.grid)
    self.length = sequence.length
    self.kernel = ModularKernel(sequence, p, q)
    self.rows = np.array(nonzero_indices(sequence), dtype=int)
    self.q_range = (q.lower_bound, q.upper_bound)

  def log_bracket(self, cfg: SolverConfig, log_mu: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    return self.kernel.log_bracket(log_mu, self.rows, _bracket_pad(cfg))

  def solve_rows(self, cfg: SolverConfig, log_mu: float = 0.0) -> BisectionResult:
    rows = self.rows

    def modular_at(log_lam, index):
      return self.kernel.evaluate(log_lam, log_mu, rows=rows[index], saturate=True)

    lo, hi = self.log_bracket(cfg, log_mu)
    return solve_decreasing(modular_at, lo, cfg, labels=rows + 1, log_upper=hi)

  def solve(self, cfg: SolverConfig, log_mu: float = 0.0) -> np.ndarray:
    return self.solve_bracket(cfg, log_mu)[0]

  def solve_bracket(self, cfg: SolverConfig,
                    log_mu: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """(midpoint, upper end) weights; at the upper end every component modular is <= 1."""
    weights = np.zeros(self.length)
    upper = np.zeros(self.length)
    if self.rows.size:
      result = self.solve_rows(cfg, log_mu)
      weights[self.rows] = result.roots
      upper[self.rows] = result.upper
    return weights, upper


class _MixedModularSign:
  """
  Decides whether the mixed modular of f / mu exceeds 1.

  The lambda_nu brackets are bisected only until the sums over their ends settle the
  question, or until they are rel_tolerance wide and the midpoint sum decides.
  lambda_nu*(f / mu) decreases in mu, so brackets held at other scales bound it too:
  upper ends from smaller scales, lower ends from larger ones.
  """

  def __init__(self, solver: _ComponentSolver, cfg: SolverConfig) -> None:
    self.solver = solver
    self.cfg = cfg
    self.scales: List[float] = []
    self.brackets: List[Tuple[np.ndarray, np.ndarray]] = []
    self.evaluations = 0

  def remember(self, log_mu: float, lo: np.ndarray, hi: np.ndarray) -> None:
    at = bisect.bisect_left(self.scales, log_mu)
    self.scales.insert(at, log_mu)
    self.brackets.insert(at, (lo, hi))

  def _bracket(self, log_mu: float) -> Tuple[np.ndarray, np.ndarray]:
    cell_lo, cell_hi = self.solver.log_bracket(self.cfg, log_mu)
    lo, hi = cell_lo, cell_hi
    smaller = bisect.bisect_right(self.scales, log_mu)
    if smaller:
      hi = np.minimum(hi, self.brackets[smaller - 1][1])
    larger = bisect.bisect_left(self.scales, log_mu)
    if larger < len(self.scales):
      lo = np.maximum(lo, self.brackets[larger][0])
    crossed = lo > hi
    return np.where(crossed, cell_lo, lo), np.where(crossed, cell_hi, hi)

  def exceeds_one(self, log_mu: float) -> bool:
    kernel, rows = self.solver.kernel, self.solver.rows
    lo, hi = self._bracket(log_mu)
    iterations = 0
    while True:
      if _weight_sum(lo) > 1:
        above = True
        break
      if _weight_sum(hi) <= 1:
        above = False
        break
      mid = 0.5 * (lo + hi)
      wide = np.flatnonzero((hi - lo > self.cfg.rel_tolerance) & (mid > lo) & (mid < hi))
      if not wide.size:
        above = _weight_sum(mid) > 1
        break
      if iterations >= self.cfg.max_bisection_iters:
        raise NonConvergenceError(
            f"bisection did not reach rel_tolerance {self.cfg.rel_tolerance!r} in "
            f"{self.cfg.max_bisection_iters} iterations", int(rows[wide[0]]) + 1)
      iterations += 1
      self.evaluations += 1
      is_above = kernel.evaluate(mid[wide], log_mu, rows=rows[wide], saturate=True) > 1
      lo[wide] = np.where(is_above, mid[wide], lo[wide])
      hi[wide] = np.where(is_above, hi[wide], mid[wide])
    self.remember(log_mu, lo, hi)
    return above


def component_weight(f_nu: SimpleFunction, p: ExponentField, q: ExponentField,
                     cfg: SolverConfig) -> float:
  solver = _ComponentSolver(FunctionSequence(f_nu.grid, [f_nu]), p, q)
  return float(solver.solve(cfg)[0])


def component_weights(f: FunctionSequence, p: ExponentField, q: ExponentField,
                      cfg: SolverConfig) -> ComponentWeights:
  return ComponentWeights(_ComponentSolver(f, p, q).solve(cfg))


def mixed_modular(f: FunctionSequence, p: ExponentField, q: ExponentField,
                  cfg: SolverConfig) -> float:
  """Sum over nu of lambda_nu*; the zero tail beyond N contributes nothing."""
  return component_weights(f, p, q, cfg).total


def mixed_norm(f: FunctionSequence, p: ExponentField, q: ExponentField,
               cfg: SolverConfig) -> float:
  return mixed_norm_diagnostics(f, p, q, cfg)[0]


def _outer_bracket(solver: _ComponentSolver, sign: _MixedModularSign,
                   cfg: SolverConfig) -> Tuple[float, float]:
  """
  log(mu) bracket from one full inner solve at the scale of the largest entry. Scaling mu
  by e^s scales every lambda_nu* by a factor between e^(-q+ s) and e^(-q- s).
  """
  log_ref = float(np.log(np.max(solver.kernel.max_abs[solver.rows])))
  result = solver.solve_rows(sign.cfg, log_ref)
  sign.evaluations += int(np.max(result.iterations))
  sign.remember(log_ref, result.log_lower, result.log_upper)
  log_total = float(np.logaddexp.reduce(0.5 * (result.log_lower + result.log_upper)))
  q_low, q_high = solver.q_range
  ends = (log_total / q_high, log_total / q_low)
  pad = OUTER_PAD_TOLERANCES * cfg.rel_tolerance
  return log_ref + min(ends) - pad, log_ref + max(ends) + pad


def mixed_norm_diagnostics(f: FunctionSequence, p: ExponentField, q: ExponentField,
                           cfg: SolverConfig) -> Tuple[float, NormDiagnostics]:
  solver = _ComponentSolver(f, p, q)
  _warn_if_relaxed(p, q)
  if not solver.rows.size:
    return 0.0, NormDiagnostics(0, 0, 0)
  sign = _MixedModularSign(solver, cfg.inner())
  lo, hi = _outer_bracket(solver, sign, cfg)
  step = _bracket_pad(cfg)

  expansions = 0
  hi_checked = False
  while not sign.exceeds_one(lo):
    if expansions >= cfg.max_bracket_expansions:
      raise NonConvergenceError(f"no bracket for the outer scale after {expansions} expansions")
    expansions += 1
    lo, hi, hi_checked = lo - step, lo, True
  while not hi_checked and sign.exceeds_one(hi):
    if expansions >= cfg.max_bracket_expansions:
      raise NonConvergenceError(f"no bracket for the outer scale after {expansions} expansions")
    expansions += 1
    lo, hi = hi, hi + step

  iterations = 0
  while hi - lo > cfg.rel_tolerance:
    mid = 0.5 * (lo + hi)
    if mid in (lo, hi):
      break
    if iterations >= cfg.max_bisection_iters:
      raise NonConvergenceError(
          f"outer bisection did not reach rel_tolerance {cfg.rel_tolerance!r} in "
          f"{cfg.max_bisection_iters} iterations")
    iterations += 1
    if sign.exceeds_one(mid):
      lo = mid
    else:
      hi = mid
  with np.errstate(over='ignore'):
    value = float(np.exp(0.5 * (lo + hi)))
  return value, NormDiagnostics(iterations, expansions, sign.evaluations)




def witness_decomposition(f: FunctionSequence,
                          p: ExponentField,
                          q: ExponentField,
                          cfg: SolverConfig,
                          floor: float = 0.0) -> ComponentWeights:
  """
  zeta_nu = lambda_nu*(f_nu), taken at the bracket end where the component modular is
  <= 1, so every nonzero component satisfies rho_p(f_nu / zeta_nu^(1/q)) <= 1. Requires
  sum zeta_nu <= 1 + rel_tolerance. With `floor` > 0 zero weights are lifted to it.
  """
  midpoint, upper = _ComponentSolver(f, p, q).solve_bracket(cfg)
  measured = math.fsum(midpoint)
  if measured > 1 + cfg.rel_tolerance:
    raise PremiseError("witness decomposition needs mixed modular <= 1", measured)
  weights = ComponentWeights(upper)
  return weights.floored(floor) if floor > 0 else weights


def midpoint_witness(f: FunctionSequence, g: FunctionSequence, mu1: float, mu2: float,
                     p: ExponentField, q: ExponentField, cfg: SolverConfig) -> ComponentWeights:
  """zeta for f/(2 mu1) + g/(2 mu2), floored so every zeta_nu > 0."""
  midpoint = f.scaled(0.5 / mu1) + g.scaled(0.5 / mu2)
  return witness_decomposition(midpoint, p, q, cfg, floor=WITNESS_FLOOR)


def constant_exponent_norm(f: FunctionSequence, p_const: float, q_const: float) -> float:
  matrix = np.abs(f.matrix)
  measures = f.grid.measures
  component_norms = np.sum(matrix**p_const * measures, axis=1)**(1.0 / p_const)
  return float(math.fsum(component_norms**q_const)**(1.0 / q_const))
