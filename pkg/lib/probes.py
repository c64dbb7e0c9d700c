"""
Numerical probes of the norm axioms and of the constructions behind them.

Strict inequalities are checked as "beyond check_factor * rel_tolerance" and every
report keeps the raw margin. Component indices `nu` are 1-based.
"""
import math
from typing import List, Optional

import numpy as np

from lib import util
from lib.bisection import solve_decreasing
from lib.errors import InputError, PremiseError
from lib.grid import ExponentField, FunctionSequence, SimpleFunction, require_same_grid
from lib.instances import InstanceSpec, random_pair, trial_seeds
from lib.modular import ModularKernel
from lib.probe_report import ProbeReport, STATUS_CLOSED, STATUS_DEGENERATE, STATUS_EXHAUSTED, \
    STATUS_FINDING, STATUS_OK, STATUS_PREMISE_FAILED, STATUS_VIOLATION
from lib.solver_config import SolverConfig
from lib.solvers import _ComponentSolver, component_weight, constant_exponent_norm, \
    mixed_modular, mixed_norm, ComponentWeights

CHECK_FACTOR = 10.0
PROPORTIONALITY_RTOL = 1e-9
MONOTONE_SAMPLES = 16
MAX_STAGES = 100
BRUTE_FORCE_POINTS = 10**6
BRUTE_FORCE_DECADES = 6
BRUTE_FORCE_CHUNK = 1 << 15


def _report(cfg: SolverConfig, trial, probe: str, lhs: float, rhs: float, passed: bool,
            seed: Optional[int], **kwargs) -> ProbeReport:
  return ProbeReport(
      trial,
      probe,
      lhs,
      rhs,
      passed,
      cfg.rel_tolerance,
      seed=seed,
      tolerance_source=cfg.tolerance_source,
      **kwargs)


def _aligned(f: FunctionSequence, g: FunctionSequence):
  require_same_grid(f.grid, g.grid)
  length = max(f.length, g.length)
  return f.padded(length), g.padded(length)


def triangle_check(f: FunctionSequence,
                   g: FunctionSequence,
                   p: ExponentField,
                   q: ExponentField,
                   cfg: SolverConfig,
                   trial=0,
                   seed: Optional[int] = None,
                   check_factor: float = CHECK_FACTOR,
                   probe: str = "triangle") -> ProbeReport:
  f, g = _aligned(f, g)
  lhs = mixed_norm(f + g, p, q, cfg)
  norm_f = mixed_norm(f, p, q, cfg)
  norm_g = mixed_norm(g, p, q, cfg)
  rhs = norm_f + norm_g
  passed = lhs <= rhs + check_factor * cfg.rel_tolerance * rhs
  return _report(
      cfg, trial, probe, lhs, rhs, passed, seed, quantities={
          'norm_f': norm_f,
          'norm_g': norm_g
      })


def _proportional(f: FunctionSequence, g: FunctionSequence, norm_f: float,
                  norm_g: float) -> bool:
  u = f.matrix / norm_f
  v = g.matrix / norm_g
  return bool(np.max(np.abs(u - v)) <= PROPORTIONALITY_RTOL * np.max(np.abs(u)))


def strict_convexity_probe(f: FunctionSequence,
                           g: FunctionSequence,
                           p: ExponentField,
                           q: ExponentField,
                           cfg: SolverConfig,
                           trial=0,
                           seed: Optional[int] = None,
                           check_factor: float = CHECK_FACTOR) -> ProbeReport:
  """
  m = mixed modular of f/(2||f||) + g/(2||g||). Non-proportional pairs need m < 1
  strictly; positive multiples of each other need m = 1.
  """
  if f.is_zero or g.is_zero:
    raise InputError("strict convexity probe needs nonzero f and g")
  f, g = _aligned(f, g)
  norm_f = mixed_norm(f, p, q, cfg)
  norm_g = mixed_norm(g, p, q, cfg)
  midpoint = f.scaled(0.5 / norm_f) + g.scaled(0.5 / norm_g)
  m = mixed_modular(midpoint, p, q, cfg)
  slack = check_factor * cfg.rel_tolerance
  proportional = _proportional(f, g, norm_f, norm_g)
  if proportional:
    passed = abs(m - 1.0) <= slack
  else:
    passed = m < 1.0 - slack
  return _report(
      cfg,
      trial,
      "convexity",
      m,
      1.0,
      passed,
      seed,
      quantities={
          'proportional': proportional,
          'norm_f': norm_f,
          'norm_g': norm_g
      })


class _CrossingSetup:
  """
  The nu-th components of f and g with the weight zeta_nu, and
      rho(a, b) = rho_p(f_nu / (zeta^(1/q) a) + g_nu / (zeta^(1/q) b)).
  """

  def __init__(self, f: FunctionSequence, g: FunctionSequence, zeta: ComponentWeights, nu: int,
               mu1: float, mu2: float, p: ExponentField, q: ExponentField) -> None:
    f, g = _aligned(f, g)
    require_same_grid(f.grid, p.grid, q.grid)
    if not 1 <= nu <= f.length:
      raise InputError(f"component index nu must lie in [1, {f.length}], got {nu}")
    if len(zeta) < nu or not zeta[nu - 1] > 0:
      raise InputError(f"zeta_{nu} must be given and positive")
    if not 0 < mu1 <= mu2 or not math.isfinite(mu2):
      raise InputError(f"need 0 < mu1 <= mu2 < inf, got mu1={mu1!r}, mu2={mu2!r}")
    if not (f[nu - 1].is_nonnegative and g[nu - 1].is_nonnegative):
      raise InputError("crossing probes are defined for cellwise nonnegative f and g only")
    self.f_nu = f[nu - 1].values
    self.g_nu = g[nu - 1].values
    self.grid = f.grid
    self.log_zeta = np.array([math.log(zeta[nu - 1])])
    self.p = p
    self.q = q
    self.mu1 = mu1
    self.mu2 = mu2
    self.total = mu1 + mu2
    self.gap = mu2 - mu1

  def rho(self, a: float, b: float, saturate: bool = False) -> float:
    values = self.f_nu / a + self.g_nu / b
    sequence = FunctionSequence(self.grid, [SimpleFunction(self.grid, values)])
    kernel = ModularKernel(sequence, self.p, self.q)
    return float(kernel.evaluate(self.log_zeta, saturate=saturate)[0])

  def premise(self) -> float:
    return self.rho(self.total, self.total)

  def symmetric(self, shift: float, r: float, saturate: bool = False) -> float:
    """Stage function: both denominators of the shift-asymmetric modular grown by r."""
    return self.rho(self.total - shift + r, self.total + shift + r, saturate)

  def asymmetric(self, shift: float) -> float:
    return self.rho(self.total - shift, self.total + shift)

  def terminal(self) -> float:
    return self.rho(2 * self.mu1, 2 * self.mu2)

  def crossing(self, shift: float, cfg: SolverConfig) -> float:
    """The r > 0 with symmetric(shift, r) = 1; needs symmetric(shift, 0) > 1."""

    def modular_at(log_r, index):
      return np.array([self.symmetric(shift, float(np.exp(log_r[0])), saturate=True)])

    guess = math.log(max(self.gap - shift, self.total * cfg.rel_tolerance, 1e-300))
    return solve_decreasing(modular_at, np.array([guess]), cfg).root


def crossing_premise(f: FunctionSequence, g: FunctionSequence, zeta: ComponentWeights, nu: int,
                     mu1: float, mu2: float, p: ExponentField, q: ExponentField) -> float:
  return _CrossingSetup(f, g, zeta, nu, mu1, mu2, p, q).premise()


def lemma_crossing_probe(f: FunctionSequence,
                         g: FunctionSequence,
                         zeta: ComponentWeights,
                         nu: int,
                         mu1: float,
                         mu2: float,
                         p: ExponentField,
                         q: ExponentField,
                         cfg: SolverConfig,
                         trial=0,
                         seed: Optional[int] = None,
                         check_factor: float = CHECK_FACTOR) -> ProbeReport:
  """
  Given rho((f+g)/(zeta^(1/q)(mu1+mu2))) > 1, locate r* with h(r*) = 1 where
  h(r) = rho((f+g)/(zeta^(1/q)(mu1+mu2+r))), then check
  rho(f/(zeta^(1/q)(mu1+mu2-r*)) + g/(zeta^(1/q)(mu1+mu2+r*))) > 1.
  A root beyond mu2 - mu1 is reported as a finding.
  """
  setup = _CrossingSetup(f, g, zeta, nu, mu1, mu2, p, q)
  slack = check_factor * cfg.rel_tolerance
  premise = setup.premise()
  if setup.gap == 0:
    return _report(
        cfg,
        trial,
        "lemma",
        premise,
        1.0,
        True,
        seed,
        status=STATUS_DEGENERATE,
        quantities={'premise': premise})
  if not premise > 1:
    raise PremiseError(f"lemma premise needs the scaled-sum modular of component {nu} > 1",
                       premise)

  samples = [setup.symmetric(0.0, setup.gap * k / MONOTONE_SAMPLES)
             for k in range(MONOTONE_SAMPLES + 1)]
  monotone = all(b <= a * (1 + 1e-15) for a, b in zip(samples, samples[1:]))

  r_star = setup.crossing(0.0, cfg)
  h_at_root = setup.symmetric(0.0, r_star)
  quantities = {'premise': premise, 'h_r_star': h_at_root, 'monotone': monotone}
  if r_star > setup.gap * (1 + cfg.rel_tolerance):
    # The proof's contradiction branch: h stays above 1 on all of (0, mu2 - mu1].
    quantities['h_end'] = samples[-1]
    return _report(
        cfg,
        trial,
        "lemma",
        h_at_root,
        samples[-1],
        monotone,
        seed,
        status=STATUS_FINDING,
        r_star=r_star,
        quantities=quantities)

  asymmetric = setup.asymmetric(min(r_star, setup.gap))
  quantities['asymmetric'] = asymmetric
  passed = monotone and abs(h_at_root - 1) <= slack and asymmetric > 1 + slack
  return _report(
      cfg,
      trial,
      "lemma",
      h_at_root,
      asymmetric,
      passed,
      seed,
      status=STATUS_OK if passed else STATUS_VIOLATION,
      r_star=r_star,
      quantities=quantities)


def iterated_crossing_search(f: FunctionSequence,
                             g: FunctionSequence,
                             zeta: ComponentWeights,
                             nu: int,
                             mu1: float,
                             mu2: float,
                             p: ExponentField,
                             q: ExponentField,
                             cfg: SolverConfig,
                             trial=0,
                             seed: Optional[int] = None,
                             max_stages: int = MAX_STAGES,
                             check_factor: float = CHECK_FACTOR) -> ProbeReport:
  """
  Repeats the crossing search on the shrinking interval (0, mu2 - mu1 - sum r_i]. Stage n
  needs the asymmetric modular at shift R = sum_{i<n} r_i to exceed 1; r_n solves the
  stage's symmetric crossing. The search stops when that premise fails, when a crossing
  falls outside the remaining interval (a finding), when the partial sums close the
  interval, or after max_stages.
  """
  setup = _CrossingSetup(f, g, zeta, nu, mu1, mu2, p, q)
  terminal = setup.terminal()
  quantities = {'terminal_modular': terminal, 'terminal_closes': terminal >= 1}
  if setup.gap == 0:
    quantities['sequence'] = []
    return _report(
        cfg,
        trial,
        "iterate",
        terminal,
        1.0,
        True,
        seed,
        status=STATUS_DEGENERATE,
        quantities=quantities)

  shift = 0.0
  sequence: List[float] = []
  partial_sums: List[float] = []
  status = STATUS_EXHAUSTED
  stage_modular = None
  stopped_at = max_stages
  for stage in range(1, max_stages + 1):
    stage_modular = setup.asymmetric(shift)
    if stage == 1:
      quantities['premise_modular'] = stage_modular
    if not stage_modular > 1:
      status = STATUS_PREMISE_FAILED
      stopped_at = stage
      break
    r_n = setup.crossing(shift, cfg)
    remaining = setup.gap - shift
    if r_n > remaining * (1 + cfg.rel_tolerance):
      status = STATUS_FINDING
      stopped_at = stage
      quantities['outside_crossing'] = r_n
      break
    shift += min(r_n, remaining)
    sequence.append(r_n)
    partial_sums.append(shift)
    if setup.gap - shift <= cfg.rel_tolerance * setup.gap:
      status = STATUS_CLOSED
      stopped_at = stage
      break

  bound = setup.gap * (1 + check_factor * cfg.rel_tolerance)
  nondecreasing = all(b >= a for a, b in zip(partial_sums, partial_sums[1:]))
  passed = nondecreasing and all(s <= bound for s in partial_sums)
  quantities.update({
      'sequence': sequence,
      'partial_sums': partial_sums,
      'stages': stopped_at,
      'stage_modular': stage_modular
  })
  return _report(
      cfg,
      trial,
      "iterate",
      shift,
      setup.gap,
      passed,
      seed,
      status=status if passed else STATUS_VIOLATION,
      r_star=sequence[-1] if sequence else None,
      quantities=quantities)


def constant_exponent_oracle(f: FunctionSequence,
                             p_const: float,
                             q_const: float,
                             cfg: SolverConfig,
                             trial=0,
                             seed: Optional[int] = None,
                             check_factor: float = CHECK_FACTOR) -> ProbeReport:
  relaxed = not (p_const > 1 and q_const > 1)
  p = ExponentField.constant(f.grid, p_const, relaxed=relaxed)
  q = ExponentField.constant(f.grid, q_const, relaxed=relaxed)
  lhs = mixed_norm(f, p, q, cfg)
  rhs = constant_exponent_norm(f, p_const, q_const)
  passed = abs(lhs - rhs) <= check_factor * cfg.rel_tolerance * rhs
  return _report(
      cfg, trial, "oracle", lhs, rhs, passed, seed, quantities={
          'p': p_const,
          'q': q_const
      })


def homogeneity_check(f: FunctionSequence,
                      c: float,
                      p: ExponentField,
                      q: ExponentField,
                      cfg: SolverConfig,
                      trial=0,
                      seed: Optional[int] = None,
                      check_factor: float = CHECK_FACTOR) -> ProbeReport:
  lhs = mixed_norm(f.scaled(c), p, q, cfg)
  rhs = abs(c) * mixed_norm(f, p, q, cfg)
  passed = abs(lhs - rhs) <= check_factor * cfg.rel_tolerance * rhs
  return _report(cfg, trial, "homogeneity", lhs, rhs, passed, seed, quantities={'c': c})


def unit_ball_check(f: FunctionSequence,
                    p: ExponentField,
                    q: ExponentField,
                    cfg: SolverConfig,
                    trial=0,
                    seed: Optional[int] = None,
                    check_factor: float = CHECK_FACTOR) -> ProbeReport:
  if f.is_zero:
    raise InputError("unit-ball check needs a nonzero sequence")
  norm = mixed_norm(f, p, q, cfg)
  m = mixed_modular(f.scaled(1.0 / norm), p, q, cfg)
  passed = abs(m - 1.0) <= check_factor * cfg.rel_tolerance
  return _report(cfg, trial, "unit-ball", m, 1.0, passed, seed, quantities={'norm': norm})


def inner_solver_oracle(f_nu: SimpleFunction,
                        p: ExponentField,
                        q: ExponentField,
                        cfg: SolverConfig,
                        trial=0,
                        seed: Optional[int] = None,
                        points: int = BRUTE_FORCE_POINTS) -> ProbeReport:
  """
  component_weight against a brute-force scan of the scaled modular over a geometric
  lambda-grid spanning BRUTE_FORCE_DECADES decades either side of the bracketing guess.
  The solver passes when its lambda lies inside the grid step where the scan crosses 1.
  """
  if f_nu.is_zero:
    raise InputError("inner-solver oracle needs a nonzero component")
  lam = component_weight(f_nu, p, q, cfg)
  solver = _ComponentSolver(FunctionSequence(f_nu.grid, [f_nu]), p, q)
  lo, hi = solver.log_bracket(cfg)
  center = 0.5 * float(lo[0] + hi[0])
  span = BRUTE_FORCE_DECADES * math.log(10.0)
  log_grid = np.linspace(center - span, center + span, points)

  crossing = None
  for start in util.chunks(range(points), BRUTE_FORCE_CHUNK):
    block = log_grid[start.start:start.stop]
    values = solver.kernel.evaluate(block, saturate=True)
    below = np.flatnonzero(values <= 1.0)
    if below.size:
      crossing = start.start + int(below[0])
      break

  quantities = {'points': points}
  if crossing is None or crossing == 0:
    return _report(
        cfg, trial, "inner-oracle", lam, math.nan, False, seed, quantities=quantities)
  lower = float(np.exp(log_grid[crossing - 1]))
  upper = float(np.exp(log_grid[crossing]))
  quantities['grid_lower'] = lower
  slack = cfg.rel_tolerance * lam
  passed = lower - slack <= lam <= upper + slack
  return _report(cfg, trial, "inner-oracle", lam, upper, passed, seed, quantities=quantities)


def quasi_norm_boundary_scan(spec: InstanceSpec,
                             trials: int,
                             cfg: SolverConfig,
                             check_factor: float = CHECK_FACTOR,
                             progress=None) -> List[ProbeReport]:
  """
  Best-effort search for triangle-inequality failures when exponent lows may reach or
  drop below 1. Each violation is a finding; its report keeps the instance under
  quantities['instance'] as (f, g, p, q).
  """
  if not spec.allow_quasi:
    raise InputError("the quasi-norm scan needs an InstanceSpec with allow_quasi set")
  reports = []
  for trial, seed in enumerate(trial_seeds(spec.seed, trials), start=1):
    f, g, p, q = random_pair(spec.with_seed(seed))
    report = triangle_check(
        f, g, p, q, cfg, trial=trial, seed=seed, check_factor=check_factor, probe="quasi-scan")
    if not report.passed:
      report.status = STATUS_FINDING
      report.quantities['instance'] = (f, g, p, q)
    reports.append(report)
    if progress is not None:
      progress.update()
  return reports
