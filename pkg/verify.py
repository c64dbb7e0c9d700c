#!/usr/bin/env python3
#
# Property suites over seeded random instances, or a single check on instance files.
#
#   verify triangle|convexity|homogeneity|unit-ball|inner-oracle|oracle|quasi-scan [options]
#
# Bulk runs write a report CSV (see lib/probe_report.HEADER) and exit 1 when any row
# is a violation or a finding. With --instance the check runs on the given file(s)
# instead; --other supplies g for triangle and convexity.

import argparse
import os

from lib import probes, suites
from lib.arguments import add_solver_arguments, add_spec_arguments, exit_code_for, \
    parse_values, save_suite, settings_from_args, spec_from_args
from lib.errors import InputError
from lib.instance_file import parse_instance, write_instance
from lib.probe_report import STATUS_FINDING
from lib.util import note

KINDS = ('triangle', 'convexity', 'oracle', 'quasi-scan', 'homogeneity', 'unit-ball',
         'inner-oracle')

BULK = {
    'triangle': suites.triangle_suite,
    'convexity': suites.convexity_suite,
    'homogeneity': suites.homogeneity_suite,
    'unit-ball': suites.unit_ball_suite,
    'inner-oracle': suites.inner_oracle_suite,
    'quasi-scan': suites.quasi_scan_suite,
}


def parse_args(argv):
  parser = argparse.ArgumentParser(prog='verify', description='Norm-axiom property suites')
  parser.add_argument("kind", choices=KINDS)
  add_spec_arguments(parser, trials=100)
  add_solver_arguments(parser)
  parser.add_argument("--instance", help="run once on this instance file (f)")
  parser.add_argument("--other", help="second instance file (g) for triangle/convexity")
  parser.add_argument("--scale", type=float, help="c for a single homogeneity check")
  parser.add_argument("--component", type=int, default=1, help="1-based, inner-oracle only")
  parser.add_argument("--p-values", type=parse_values, default=list(suites.ORACLE_EXPONENTS))
  parser.add_argument("--q-values", type=parse_values, default=list(suites.ORACLE_EXPONENTS))
  return parser.parse_args(argv)


def _single(args, settings):
  f, p, q = parse_instance(args.instance)
  cfg = settings.cfg
  factor = settings.check_factor
  if args.kind in ('triangle', 'convexity', 'quasi-scan'):
    if not args.other:
      raise InputError(f"{args.kind} on files needs --other")
    g, _, _ = parse_instance(args.other)
    if args.kind == 'convexity':
      return probes.strict_convexity_probe(f, g, p, q, cfg, check_factor=factor)
    report = probes.triangle_check(f, g, p, q, cfg, check_factor=factor, probe=args.kind)
    if args.kind == 'quasi-scan' and not report.passed:
      report.status = STATUS_FINDING
    return report
  if args.kind == 'homogeneity':
    if args.scale is None:
      raise InputError("homogeneity on a file needs --scale")
    return probes.homogeneity_check(f, args.scale, p, q, cfg, check_factor=factor)
  if args.kind == 'unit-ball':
    return probes.unit_ball_check(f, p, q, cfg, check_factor=factor)
  if args.kind == 'inner-oracle':
    if not 1 <= args.component <= f.length:
      raise InputError(f"--component must lie in [1, {f.length}], got {args.component}")
    return probes.inner_solver_oracle(
        f[args.component - 1], p, q, cfg, points=settings.brute_points)
  if not (p.is_constant and q.is_constant):
    raise InputError("oracle on a file needs constant exponents")
  return probes.constant_exponent_oracle(
      f, p.lower_bound, q.lower_bound, cfg, check_factor=factor)


def _write_findings(reports, report_path: str) -> None:
  stem = os.path.splitext(report_path)[0]
  for report in reports:
    if report.status != STATUS_FINDING or 'instance' not in report.quantities:
      continue
    f, g, p, q = report.quantities['instance']
    base = f"{stem}-trial{report.trial}"
    metadata = {'seed': report.seed, 'description': f"quasi-scan trial {report.trial}"}
    write_instance(f"{base}-f.yml", f, p, q, metadata)
    write_instance(f"{base}-g.yml", g, p, q, metadata)
    note(f"Violating pair written to {base}-f.yml / {base}-g.yml")


def main(argv) -> int:
  args = parse_args(argv)
  config, settings = settings_from_args(args)
  suite = f"verify-{args.kind}"

  if args.instance:
    report = _single(args, settings)
    note(repr(report))
    reports = [report]
    if args.report:
      save_suite(reports, suite, args, config, settings)
    return exit_code_for(reports)

  spec = spec_from_args(args, allow_quasi=args.kind == 'quasi-scan')
  if args.kind == 'oracle':
    reports = suites.oracle_suite(spec, args.trials, settings, args.p_values, args.q_values)
  else:
    reports = BULK[args.kind](spec, args.trials, settings)
  path = save_suite(reports, suite, args, config, settings)
  if args.kind == 'quasi-scan':
    _write_findings(reports, path)
  return exit_code_for(reports)
