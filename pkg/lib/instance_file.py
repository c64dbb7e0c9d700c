"""
InstanceFile: a YAML document holding one problem instance.

    grid:
      dimension: 1
      cell_measures: [0.5, 0.5]
    p: [2, 4]
    q: [2, 2]
    components:
      - [1, 1]
    quasi: false          # optional; true admits exponents in (0, 1]
    metadata:             # optional
      seed: 42
      description: two-cell example

Validation errors point at the offending line of the file.
"""
import math
from typing import Any, Dict, Optional, Tuple

import yaml

from lib.errors import InputError, InstanceFileError
from lib.grid import ExponentField, FunctionSequence, Grid

REQUIRED_KEYS = ('grid', 'p', 'q', 'components')

Instance = Tuple[FunctionSequence, ExponentField, ExponentField]


def _node_lines(root) -> Dict[tuple, int]:
  """1-based line of every mapping value and list item, keyed by its path."""
  lines = {}

  def walk(node, path):
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
      for key_node, value_node in node.value:
        walk(value_node, path + (key_node.value,))
    elif isinstance(node, yaml.SequenceNode):
      for index, item in enumerate(node.value):
        walk(item, path + (index,))

  if root is not None:
    walk(root, ())
  return lines


class _Reader:

  def __init__(self, path, lines: Dict[tuple, int]) -> None:
    self.path = path
    self.lines = lines

  def fail(self, message: str, *where) -> InstanceFileError:
    # Fall back to the closest enclosing node that has a known line.
    for cut in range(len(where), -1, -1):
      if where[:cut] in self.lines:
        return InstanceFileError(message, self.path, self.lines[where[:cut]])
    return InstanceFileError(message, self.path)

  def numbers(self, value, *where) -> list:
    if not isinstance(value, list) or not value:
      raise self.fail(f"{'.'.join(map(str, where))} must be a non-empty list of numbers", *where)
    result = []
    for index, item in enumerate(value):
      if isinstance(item, bool) or not isinstance(item, (int, float)):
        raise self.fail(f"{'.'.join(map(str, where))}[{index}] is not a number: {item!r}",
                        *where, index)
      if not math.isfinite(item):
        raise self.fail(f"{'.'.join(map(str, where))}[{index}] is not finite: {item!r}",
                        *where, index)
      result.append(float(item))
    return result

  def exponent(self, document, key: str, grid: Grid, relaxed: bool) -> ExponentField:
    values = self.numbers(document[key], key)
    if len(values) != grid.cell_count:
      raise self.fail(f"{key} has {len(values)} entries, the grid has {grid.cell_count} cells", key)
    floor = 0.0 if relaxed else 1.0
    for index, value in enumerate(values):
      if not floor < value < float('inf'):
        hint = "" if relaxed else " (set quasi: true for exponents in (0, 1])"
        raise self.fail(f"{key}[{index}] = {value!r} must lie in ({floor:g}, inf){hint}", key,
                        index)
    return ExponentField(grid, values, relaxed=relaxed)


def load_instance(text: str, path=None) -> Tuple[Instance, Dict[str, Any]]:
  try:
    root = yaml.compose(text, Loader=yaml.SafeLoader)
    document = yaml.safe_load(text)
  except yaml.YAMLError as e:
    mark = getattr(e, 'problem_mark', None)
    line = mark.line + 1 if mark is not None else None
    raise InstanceFileError(f"not valid YAML: {getattr(e, 'problem', None) or e}", path,
                            line) from e
  reader = _Reader(path, _node_lines(root))
  if not isinstance(document, dict):
    raise reader.fail("an instance file must be a mapping")
  missing = [key for key in REQUIRED_KEYS if key not in document]
  if missing:
    raise reader.fail(f"missing keys: {', '.join(missing)}")

  relaxed = document.get('quasi', False)
  if not isinstance(relaxed, bool):
    raise reader.fail("quasi must be true or false", 'quasi')
  grid_section = document['grid']
  if not isinstance(grid_section, dict) or 'cell_measures' not in grid_section:
    raise reader.fail("grid needs cell_measures", 'grid')
  measures = reader.numbers(grid_section['cell_measures'], 'grid', 'cell_measures')
  try:
    grid = Grid(measures, grid_section.get('dimension', 1))
  except InputError as e:
    raise reader.fail(str(e), 'grid') from e

  p = reader.exponent(document, 'p', grid, relaxed)
  q = reader.exponent(document, 'q', grid, relaxed)

  rows = document['components']
  if not isinstance(rows, list) or not rows:
    raise reader.fail("components must be a non-empty list of rows", 'components')
  values = []
  for index, row in enumerate(rows):
    row_values = reader.numbers(row, 'components', index)
    if len(row_values) != grid.cell_count:
      raise reader.fail(
          f"components[{index}] has {len(row_values)} entries, the grid has "
          f"{grid.cell_count} cells", 'components', index)
    values.append(row_values)
  metadata = document.get('metadata') or {}
  if not isinstance(metadata, dict):
    raise reader.fail("metadata must be a mapping", 'metadata')
  return (FunctionSequence.from_rows(grid, values), p, q), metadata


def parse_instance(path) -> Instance:
  try:
    with open(path, 'r') as stream:
      text = stream.read()
  except OSError as e:
    raise InstanceFileError(f"cannot read instance file: {e.strerror}", path) from e
  return load_instance(text, path)[0]


def _reals(values) -> list:
  # PyYAML writes floats with repr, which reads back as the same double.
  return [float(v) for v in values]


def serialize_instance(f: FunctionSequence,
                       p: ExponentField,
                       q: ExponentField,
                       metadata: Optional[Dict[str, Any]] = None) -> str:
  document = {
      'grid': {
          'dimension': f.grid.dimension,
          'cell_measures': _reals(f.grid.measures)
      },
      'p': _reals(p.values),
      'q': _reals(q.values),
      'components': [_reals(component.values) for component in f],
  }
  if p.relaxed or q.relaxed:
    document['quasi'] = True
  if metadata:
    document['metadata'] = dict(metadata)
  return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def write_instance(path,
                   f: FunctionSequence,
                   p: ExponentField,
                   q: ExponentField,
                   metadata: Optional[Dict[str, Any]] = None) -> None:
  with open(path, 'w') as stream:
    stream.write(serialize_instance(f, p, q, metadata))
