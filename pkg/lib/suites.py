"""
Bulk drivers behind `verify` and `probe`. Every trial draws its instance from its own
sub-seed (see lib.instances.trial_seeds) and rows come back in trial order.
"""
from dataclasses import replace
from typing import Callable, Iterable, List, Tuple

import numpy as np
from tqdm import tqdm

from lib import probes
from lib.grid import ExponentField, FunctionSequence, SimpleFunction
from lib.instances import InstanceSpec, random_instance, random_pair, random_scalar, trial_seeds
from lib.probe_report import ProbeReport
from lib.solver_config import SolverConfig
from lib.solvers import ComponentWeights, luxemburg_norm, midpoint_witness, mixed_norm

ORACLE_EXPONENTS = (1.5, 2.0, 3.0, 7.0)
# Share of convexity trials run on proportional pairs g = c f.
PROPORTIONAL_EVERY = 6


class SuiteSettings:

  def __init__(self,
               cfg: SolverConfig,
               check_factor: float = probes.CHECK_FACTOR,
               brute_points: int = probes.BRUTE_FORCE_POINTS,
               max_stages: int = probes.MAX_STAGES,
               quiet: bool = False) -> None:
    self.cfg = cfg
    self.check_factor = check_factor
    self.brute_points = brute_points
    self.max_stages = max_stages
    self.quiet = quiet


def _run(desc: str, spec: InstanceSpec, trials: int, settings: SuiteSettings,
         trial_fn: Callable[[int, int], ProbeReport]) -> List[ProbeReport]:
  reports = []
  seeds = trial_seeds(spec.seed, trials)
  with tqdm(desc=desc, unit='trial', total=trials, disable=settings.quiet) as pbar:
    for trial, seed in enumerate(seeds, start=1):
      reports.append(trial_fn(trial, seed))
      pbar.update()
  return reports


def triangle_suite(spec: InstanceSpec, trials: int, settings: SuiteSettings) -> List[ProbeReport]:

  def trial_fn(trial, seed):
    f, g, p, q = random_pair(spec.with_seed(seed))
    return probes.triangle_check(
        f, g, p, q, settings.cfg, trial=trial, seed=seed, check_factor=settings.check_factor)

  return _run("Triangle inequality", spec, trials, settings, trial_fn)


def convexity_suite(spec: InstanceSpec, trials: int,
                    settings: SuiteSettings) -> List[ProbeReport]:
  """Mostly independent pairs; every PROPORTIONAL_EVERY-th trial uses g = c f with c > 0."""

  def trial_fn(trial, seed):
    f, g, p, q = random_pair(spec.with_seed(seed))
    if trial % PROPORTIONAL_EVERY == 0:
      g = f.scaled(abs(random_scalar(seed, 1e-3, 1e3)))
    return probes.strict_convexity_probe(
        f, g, p, q, settings.cfg, trial=trial, seed=seed, check_factor=settings.check_factor)

  return _run("Strict convexity", spec, trials, settings, trial_fn)


def oracle_suite(spec: InstanceSpec,
                 trials: int,
                 settings: SuiteSettings,
                 p_values: Iterable[float] = ORACLE_EXPONENTS,
                 q_values: Iterable[float] = ORACLE_EXPONENTS) -> List[ProbeReport]:
  """`trials` instances for every (p, q) pair; trial numbers run on across pairs."""
  pairs: List[Tuple[float, float]] = [(p, q) for p in p_values for q in q_values]
  seeds = trial_seeds(spec.seed, trials)
  reports = []
  with tqdm(
      desc="Constant-exponent oracle",
      unit='trial',
      total=trials * len(pairs),
      disable=settings.quiet) as pbar:
    for p_const, q_const in pairs:
      for seed in seeds:
        f, _, _ = random_instance(spec.with_seed(seed))
        reports.append(
            probes.constant_exponent_oracle(
                f,
                p_const,
                q_const,
                settings.cfg,
                trial=len(reports) + 1,
                seed=seed,
                check_factor=settings.check_factor))
        pbar.update()
  return reports


def homogeneity_suite(spec: InstanceSpec, trials: int,
                      settings: SuiteSettings) -> List[ProbeReport]:

  def trial_fn(trial, seed):
    f, p, q = random_instance(spec.with_seed(seed))
    c = random_scalar(seed)
    return probes.homogeneity_check(
        f, c, p, q, settings.cfg, trial=trial, seed=seed, check_factor=settings.check_factor)

  return _run("Homogeneity", spec, trials, settings, trial_fn)


def unit_ball_suite(spec: InstanceSpec, trials: int,
                    settings: SuiteSettings) -> List[ProbeReport]:

  def trial_fn(trial, seed):
    f, p, q = random_instance(spec.with_seed(seed))
    return probes.unit_ball_check(
        f, p, q, settings.cfg, trial=trial, seed=seed, check_factor=settings.check_factor)

  return _run("Unit ball", spec, trials, settings, trial_fn)


def inner_oracle_suite(spec: InstanceSpec, trials: int,
                       settings: SuiteSettings) -> List[ProbeReport]:
  single = replace(spec, component_count=1)

  def trial_fn(trial, seed):
    f, p, q = random_instance(single.with_seed(seed))
    return probes.inner_solver_oracle(
        f[0], p, q, settings.cfg, trial=trial, seed=seed, points=settings.brute_points)

  return _run("Inner-solver oracle", spec, trials, settings, trial_fn)


def quasi_scan_suite(spec: InstanceSpec, trials: int,
                     settings: SuiteSettings) -> List[ProbeReport]:
  with tqdm(desc="Quasi-norm scan", unit='trial', total=trials, disable=settings.quiet) as pbar:
    return probes.quasi_norm_boundary_scan(
        spec, trials, settings.cfg, check_factor=settings.check_factor, progress=pbar)


def _lemma_scales(f: FunctionSequence, g: FunctionSequence, p: ExponentField, q: ExponentField,
                  seed: int, cfg: SolverConfig) -> Tuple[ComponentWeights, int, float, float]:
  """
  A lemma instance whose premise holds with a crossing inside (0, mu2 - mu1]: with s0 the
  scale where rho((f_nu + g_nu) / (zeta^(1/q) s)) = 1, take mu1 = a s0 and mu2 = b s0 with
  a + b < 1 and b >= 0.5.
  """
  rng = np.random.default_rng(seed)
  zeta = midpoint_witness(f, g, mixed_norm(f, p, q, cfg), mixed_norm(g, p, q, cfg), p, q, cfg)
  nu = int(rng.integers(1, f.length + 1))
  combined = (f[nu - 1] + g[nu - 1]).values / np.power(zeta[nu - 1], 1.0 / q.values)
  s0 = luxemburg_norm(SimpleFunction(f.grid, combined), p, cfg)
  a = float(rng.uniform(0.02, 0.4))
  b = float(rng.uniform(0.5, 0.95 - a))
  return zeta, nu, a * s0, b * s0


def lemma_suite(spec: InstanceSpec, trials: int, settings: SuiteSettings) -> List[ProbeReport]:
  spec = replace(spec, nonnegative=True)

  def trial_fn(trial, seed):
    f, g, p, q = random_pair(spec.with_seed(seed))
    zeta, nu, mu1, mu2 = _lemma_scales(f, g, p, q, seed, settings.cfg)
    return probes.lemma_crossing_probe(
        f,
        g,
        zeta,
        nu,
        mu1,
        mu2,
        p,
        q,
        settings.cfg,
        trial=trial,
        seed=seed,
        check_factor=settings.check_factor)

  return _run("Lemma crossing", spec, trials, settings, trial_fn)


def iterate_suite(spec: InstanceSpec, trials: int, settings: SuiteSettings) -> List[ProbeReport]:
  """mu1 <= mu2 are the two norms; zeta is the midpoint witness; nu maximizes the premise."""
  spec = replace(spec, nonnegative=True)
  cfg = settings.cfg

  def trial_fn(trial, seed):
    f, g, p, q = random_pair(spec.with_seed(seed))
    mu1 = mixed_norm(f, p, q, cfg)
    mu2 = mixed_norm(g, p, q, cfg)
    if mu1 > mu2:
      f, g, mu1, mu2 = g, f, mu2, mu1
    zeta = midpoint_witness(f, g, mu1, mu2, p, q, cfg)
    premises = [
        probes.crossing_premise(f, g, zeta, nu, mu1, mu2, p, q) for nu in range(1, f.length + 1)
    ]
    nu = int(np.argmax(premises)) + 1
    return probes.iterated_crossing_search(
        f,
        g,
        zeta,
        nu,
        mu1,
        mu2,
        p,
        q,
        cfg,
        trial=trial,
        seed=seed,
        max_stages=settings.max_stages,
        check_factor=settings.check_factor)

  return _run("Iterated crossing", spec, trials, settings, trial_fn)
