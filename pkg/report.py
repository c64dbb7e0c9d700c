#!/usr/bin/env python3
#
# Re-read a saved report and exit the way the run that wrote it did: 1 when any row is a
# violation or a finding, 0 otherwise.
#
#   report FILE

import argparse
import os

from lib.arguments import exit_code_for
from lib.errors import InputError
from lib.report_output import ReportOutput
from lib.util import note


def parse_args(argv):
  parser = argparse.ArgumentParser(prog='report', description='Check a saved report')
  parser.add_argument("file")
  return parser.parse_args(argv)


def main(argv) -> int:
  args = parse_args(argv)
  if not os.path.exists(args.file):
    raise InputError(f"no report at {args.file}")
  try:
    reports = ReportOutput(args.file).get_existing_reports()
  except (IndexError, ValueError) as e:
    raise InputError(f"{args.file} is not a report: {e}")
  probes = sorted({r.probe for r in reports})
  passed = sum(1 for r in reports if r.passed)
  note(f"{args.file}: {len(reports)} rows ({', '.join(probes) or 'none'}), {passed} passed")
  return exit_code_for(reports)
