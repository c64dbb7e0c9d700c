#!/usr/bin/env python3
#
# Write a seeded random instance as an instance file (stdout without --out).

import argparse
import sys

from lib.arguments import parse_range, parse_seed
from lib.errors import EXIT_OK
from lib.instance_file import serialize_instance
from lib.instances import InstanceSpec, random_instance
from lib.util import note


def main(argv) -> int:
  parser = argparse.ArgumentParser(prog='generate', description='Generate an instance file')
  parser.add_argument("--seed", type=parse_seed, default=0)
  parser.add_argument("--p", type=parse_range, default=(1.5, 4.0), metavar="LO:HI")
  parser.add_argument("--q", type=parse_range, default=(1.5, 4.0), metavar="LO:HI")
  parser.add_argument("--cells", type=int, default=8)
  parser.add_argument("--components", type=int, default=2)
  parser.add_argument("--dimension", type=int, default=1)
  parser.add_argument("--amplitude", type=float, default=1.0)
  parser.add_argument("--total-measure", type=float, default=1.0)
  parser.add_argument("--quasi", action="store_true", help="admit exponent lows in (0, 1]")
  parser.add_argument("--nonnegative", action="store_true")
  parser.add_argument("--description", default="")
  parser.add_argument("--out", help="output path")
  args = parser.parse_args(argv)

  spec = InstanceSpec(
      seed=args.seed,
      dimension=args.dimension,
      cell_count=args.cells,
      component_count=args.components,
      p_range=tuple(args.p),
      q_range=tuple(args.q),
      amplitude=args.amplitude,
      allow_quasi=args.quasi,
      nonnegative=args.nonnegative,
      total_measure=args.total_measure)
  f, p, q = random_instance(spec)
  metadata = {'seed': spec.seed}
  if args.description:
    metadata['description'] = args.description
  text = serialize_instance(f, p, q, metadata)
  if args.out:
    with open(args.out, 'w') as stream:
      stream.write(text)
    note(f"Wrote instance (seed {spec.seed}) to {args.out}")
  else:
    sys.stdout.write(text)
  return EXIT_OK
