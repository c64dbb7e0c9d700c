#!/usr/bin/env python3
#
# Crossing probes on cellwise nonnegative pairs.
#
#   probe lemma|iterate [suite options]
#   probe lemma|iterate --instance F --other G --nu N --mu1 A --mu2 B [--zeta z1,z2,...]
#
# Without --zeta the weights are the witness of f/(2 mu1) + g/(2 mu2). Signed inputs are
# refused (exit 2).

import argparse

from lib import probes, suites
from lib.arguments import add_solver_arguments, add_spec_arguments, exit_code_for, \
    parse_values, save_suite, settings_from_args, spec_from_args
from lib.errors import InputError
from lib.instance_file import parse_instance
from lib.solvers import ComponentWeights, midpoint_witness
from lib.util import note

KINDS = ('lemma', 'iterate')


def parse_args(argv):
  parser = argparse.ArgumentParser(prog='probe', description='Crossing probes')
  parser.add_argument("kind", choices=KINDS)
  add_spec_arguments(parser, trials=200)
  add_solver_arguments(parser)
  parser.add_argument("--instance", help="instance file holding f")
  parser.add_argument("--other", help="instance file holding g")
  parser.add_argument("--nu", type=int, default=1, help="1-based component index")
  parser.add_argument("--mu1", type=float)
  parser.add_argument("--mu2", type=float)
  parser.add_argument("--zeta", type=parse_values, help="comma-separated component weights")
  return parser.parse_args(argv)


def _single(args, settings):
  if not args.other or args.mu1 is None or args.mu2 is None:
    raise InputError("a probe on files needs --other, --mu1 and --mu2")
  f, p, q = parse_instance(args.instance)
  g, _, _ = parse_instance(args.other)
  if not (f.is_nonnegative and g.is_nonnegative):
    raise InputError("lemma and iterate probes take cellwise nonnegative f and g only")
  cfg = settings.cfg
  if args.zeta is not None:
    zeta = ComponentWeights(args.zeta)
  else:
    zeta = midpoint_witness(f, g, args.mu1, args.mu2, p, q, cfg)
  if args.kind == 'lemma':
    return probes.lemma_crossing_probe(
        f, g, zeta, args.nu, args.mu1, args.mu2, p, q, cfg, check_factor=settings.check_factor)
  return probes.iterated_crossing_search(
      f,
      g,
      zeta,
      args.nu,
      args.mu1,
      args.mu2,
      p,
      q,
      cfg,
      max_stages=settings.max_stages,
      check_factor=settings.check_factor)


def main(argv) -> int:
  args = parse_args(argv)
  config, settings = settings_from_args(args)
  suite = f"probe-{args.kind}"

  if args.instance:
    report = _single(args, settings)
    note(repr(report))
    if report.quantities.get('sequence'):
      note(f"crossings: {report.quantities['sequence']}")
    reports = [report]
    if args.report:
      save_suite(reports, suite, args, config, settings)
    return exit_code_for(reports)

  spec = spec_from_args(args, nonnegative=True)
  run = suites.lemma_suite if args.kind == 'lemma' else suites.iterate_suite
  reports = run(spec, args.trials, settings)
  save_suite(reports, suite, args, config, settings)
  return exit_code_for(reports)
