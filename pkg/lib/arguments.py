import argparse
from typing import List, Tuple

from lib import report_output
from lib.config import open_config, output_folder, suite_settings_from
from lib.errors import EXIT_OK, EXIT_VIOLATION, InputError
from lib.instances import InstanceSpec
from lib.probe_report import ProbeReport
from lib.report_output import ReportOutput
from lib.suites import SuiteSettings
from lib.util import note


def parse_range(text: str) -> Tuple[float, float]:
  """'lo:hi' or a single value 'v' (meaning v:v)."""
  try:
    parts = [float(part) for part in text.split(':')]
  except ValueError:
    raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
  if len(parts) == 1:
    parts = parts * 2
  if len(parts) != 2:
    raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
  return parts[0], parts[1]


def parse_values(text: str) -> List[float]:
  try:
    return [float(part) for part in text.split(',') if part.strip()]
  except ValueError:
    raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def parse_seed(text: str) -> int:
  try:
    return int(text, 0)
  except ValueError:
    raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")


def add_solver_arguments(parser: argparse.ArgumentParser) -> None:
  parser.add_argument("--rel-tolerance", type=float, help="overrides config and environment")
  parser.add_argument("--config", help="path to config.yml")


def add_spec_arguments(parser: argparse.ArgumentParser, trials: int) -> None:
  parser.add_argument("--trials", type=int, default=trials)
  parser.add_argument("--seed", type=parse_seed, default=0)
  parser.add_argument("--p", type=parse_range, default=(1.5, 4.0), metavar="LO:HI")
  parser.add_argument("--q", type=parse_range, default=(1.5, 4.0), metavar="LO:HI")
  parser.add_argument("--cells", type=int, default=8)
  parser.add_argument("--components", type=int, default=2)
  parser.add_argument("--dimension", type=int, default=1)
  parser.add_argument("--amplitude", type=float, default=1.0)
  parser.add_argument("--report", help="report CSV path (default: output folder)")
  parser.add_argument("--quiet", action="store_true", help="no progress bar")


def spec_from_args(args, allow_quasi: bool = False, nonnegative: bool = False) -> InstanceSpec:
  if args.trials < 0:
    raise InputError(f"--trials must be nonnegative, got {args.trials}")
  return InstanceSpec(
      seed=args.seed,
      dimension=args.dimension,
      cell_count=args.cells,
      component_count=args.components,
      p_range=tuple(args.p),
      q_range=tuple(args.q),
      amplitude=args.amplitude,
      allow_quasi=allow_quasi,
      nonnegative=nonnegative)


def settings_from_args(args) -> Tuple[dict, SuiteSettings]:
  config = open_config(args.config)
  quiet = getattr(args, 'quiet', False)
  return config, suite_settings_from(config, args.rel_tolerance, quiet)


def save_suite(reports: List[ProbeReport], suite: str, args, config: dict,
               settings: SuiteSettings) -> str:
  seed = getattr(args, 'seed', None)
  path = getattr(args, 'report', None) or report_output.default_report_path(
      output_folder(config), suite, seed)
  ReportOutput(path).save_reports(reports, suite, settings.cfg.rel_tolerance, seed,
                                  settings.cfg.tolerance_source)
  note(f"Wrote {len(reports)} rows to {path}")
  return path


def exit_code_for(reports: List[ProbeReport]) -> int:
  flagged = [r for r in reports if r.flagged]
  if flagged:
    note(f"{len(flagged)} of {len(reports)} rows flagged; first: {flagged[0]!r}")
    return EXIT_VIOLATION
  return EXIT_OK

