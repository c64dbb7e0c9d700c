# config.py
#
# Open config file and turn it into solver/suite settings.
#
import os
from typing import Optional

import yaml

from lib import probes
from lib.errors import InputError
from lib.report_output import OUTPUT_FOLDER
from lib.solver_config import SolverConfig
from lib.suites import SuiteSettings

CONFIG_PATH = "config.yml"
TOLERANCE_ENV = "VARMIX_REL_TOLERANCE"


def open_config(path: Optional[str] = None) -> dict:
  explicit = path is not None
  path = path or CONFIG_PATH
  if not os.path.exists(path):
    if explicit:
      raise InputError(f"config file not found: {path}")
    return {}
  try:
    with open(path, 'r') as config_file_stream:
      config = yaml.safe_load(config_file_stream)
  except yaml.YAMLError as e:
    raise InputError(f"{path}: not valid YAML: {e}") from e
  if config is None:
    return {}
  if not isinstance(config, dict):
    raise InputError(f"{path}: the configuration must be a mapping")
  return config


def _section(config: dict, name: str) -> dict:
  section = config.get(name) or {}
  if not isinstance(section, dict):
    raise InputError(f"config section '{name}' must be a mapping")
  return section


def _number(section: dict, key: str, default, kind=float):
  value = section.get(key, default)
  try:
    return kind(value)
  except (TypeError, ValueError) as e:
    raise InputError(f"config value {key} must be a number, got {value!r}") from e


def solver_config_from(config: dict, flag_tolerance: Optional[float] = None) -> SolverConfig:
  """
  Tolerance precedence: flag > VARMIX_REL_TOLERANCE > solver.relTolerance > default. The
  winning source is kept on the SolverConfig for the report rows.
  """
  solver = _section(config, 'solver')
  base = SolverConfig()
  if flag_tolerance is not None:
    tolerance, source = flag_tolerance, 'flag'
  elif os.environ.get(TOLERANCE_ENV):
    text = os.environ[TOLERANCE_ENV]
    try:
      tolerance, source = float(text), 'env'
    except ValueError as e:
      raise InputError(f"{TOLERANCE_ENV} must be a number, got {text!r}") from e
  elif 'relTolerance' in solver:
    tolerance, source = _number(solver, 'relTolerance', None), 'config'
  else:
    tolerance, source = base.rel_tolerance, 'default'
  return SolverConfig(
      rel_tolerance=tolerance,
      max_bisection_iters=_number(solver, 'maxBisectionIters', base.max_bisection_iters, int),
      bracket_growth=_number(solver, 'bracketGrowth', base.bracket_growth),
      max_bracket_expansions=_number(solver, 'maxBracketExpansions',
                                     base.max_bracket_expansions, int),
      tolerance_source=source)


def suite_settings_from(config: dict,
                        flag_tolerance: Optional[float] = None,
                        quiet: bool = False) -> SuiteSettings:
  verify = _section(config, 'verify')
  return SuiteSettings(
      solver_config_from(config, flag_tolerance),
      check_factor=_number(verify, 'checkFactor', probes.CHECK_FACTOR),
      brute_points=_number(verify, 'brutePoints', probes.BRUTE_FORCE_POINTS, int),
      max_stages=_number(verify, 'maxStages', probes.MAX_STAGES, int),
      quiet=quiet)


def output_folder(config: dict) -> str:
  return str(_section(config, 'output').get('folder', OUTPUT_FOLDER))
