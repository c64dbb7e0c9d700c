#!/usr/bin/env python3
#
# Evaluate one instance file. Prints a single value (17 significant digits) on stdout;
# diagnostics go to stderr.
#
#   modular FILE                       mixed modular of the whole sequence
#   modular FILE --component N         rho_p(f_N)
#   modular FILE --component N --lambda L
#                                      rho_p(f_N / L^(1/q))
#   norm FILE [--component N]          mixed norm, or ||f_N||_p with --component
#   component-weight FILE --component N
#                                      lambda_N*

import argparse

from lib.arguments import add_solver_arguments
from lib.config import open_config, solver_config_from
from lib.errors import EXIT_OK, InputError
from lib.instance_file import parse_instance
from lib.modular import modular_p, scaled_component_modular
from lib.solvers import component_weight, luxemburg_norm, mixed_modular, mixed_norm_diagnostics
from lib.util import format_real, note

COMMANDS = ('modular', 'norm', 'component-weight')


def _component(f, index):
  if index is None:
    return None
  if not 1 <= index <= f.length:
    raise InputError(f"--component must lie in [1, {f.length}], got {index}")
  return f[index - 1]


def evaluate(command: str, args) -> float:
  f, p, q = parse_instance(args.file)
  cfg = solver_config_from(open_config(args.config), args.rel_tolerance)
  component = _component(f, args.component)

  if command == 'modular':
    if args.lam is not None:
      if component is None:
        raise InputError("--lambda needs --component")
      return scaled_component_modular(component, p, q, args.lam)
    if component is not None:
      return modular_p(component, p)
    return mixed_modular(f, p, q, cfg)

  if command == 'norm':
    if component is not None:
      return luxemburg_norm(component, p, cfg)
    value, diagnostics = mixed_norm_diagnostics(f, p, q, cfg)
    note(str(diagnostics))
    return value

  if component is None:
    raise InputError("component-weight needs --component")
  return component_weight(component, p, q, cfg)


def main(argv, command: str) -> int:
  parser = argparse.ArgumentParser(prog=command, description=f'{command} of an instance file')
  parser.add_argument("file")
  parser.add_argument("--component", type=int, help="1-based component index")
  if command == 'modular':
    parser.add_argument("--lambda", dest="lam", type=float)
  add_solver_arguments(parser)
  args = parser.parse_args(argv)
  if command != 'modular':
    args.lam = None

  print(format_real(evaluate(command, args)))
  return EXIT_OK
