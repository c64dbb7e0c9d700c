#!/usr/bin/env python3

import sys

import evaluate
import generate
import probe
import report
import verify
from lib import util
from lib.errors import EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, VarmixError

USAGE = """usage: main.py COMMAND [options]

Commands:
  modular FILE [--component N [--lambda L]]
  norm FILE [--component N]
  component-weight FILE --component N
  verify {triangle|convexity|oracle|quasi-scan|homogeneity|unit-ball|inner-oracle} [options]
  probe {lemma|iterate} [options]
  generate [options]
  report FILE

Run COMMAND --help for its options."""


def _dispatch(command: str, rest) -> int:
  if command in evaluate.COMMANDS:
    return evaluate.main(rest, command)
  if command == 'verify':
    return verify.main(rest)
  if command == 'probe':
    return probe.main(rest)
  if command == 'generate':
    return generate.main(rest)
  if command == 'report':
    return report.main(rest)
  util.note(f"unknown command {command!r}\n{USAGE}")
  return EXIT_INPUT


def run_command(argv) -> int:
  """Runs one command line (without the program name) and returns its exit code."""
  if not argv or argv[0] in ('-h', '--help'):
    util.note(USAGE)
    return EXIT_INPUT if not argv else EXIT_OK
  try:
    return _dispatch(argv[0], list(argv[1:]))
  except VarmixError as e:
    util.note(f"error: {e}")
    return e.exit_code
  except SystemExit as e:
    # argparse: 0 for --help, 2 for usage errors.
    return e.code if isinstance(e.code, int) else EXIT_INPUT
  except Exception:
    util.note(util.get_traceback_lines())
    return EXIT_NUMERICAL


if __name__ == "__main__":
  sys.exit(run_command(sys.argv[1:]))
