from dataclasses import dataclass, replace

from lib.errors import InputError

DEFAULT_REL_TOLERANCE = 1e-12
DEFAULT_MAX_BISECTION_ITERS = 200
DEFAULT_BRACKET_GROWTH = 2.0
DEFAULT_MAX_BRACKET_EXPANSIONS = 200

# Inner lambda-solves run this much tighter than the outer mu-solve.
INNER_TOLERANCE_DIVISOR = 10.0


@dataclass(frozen=True)
class SolverConfig:
  rel_tolerance: float = DEFAULT_REL_TOLERANCE
  max_bisection_iters: int = DEFAULT_MAX_BISECTION_ITERS
  bracket_growth: float = DEFAULT_BRACKET_GROWTH
  max_bracket_expansions: int = DEFAULT_MAX_BRACKET_EXPANSIONS
  tolerance_source: str = 'default'

  def __post_init__(self) -> None:
    if not 0 < self.rel_tolerance < 1:
      raise InputError(f"rel_tolerance must lie in (0, 1), got {self.rel_tolerance!r}")
    if self.max_bisection_iters < 1 or self.max_bracket_expansions < 1:
      raise InputError("iteration caps must be at least 1")
    if not self.bracket_growth > 1:
      raise InputError(f"bracket_growth must exceed 1, got {self.bracket_growth!r}")

  def inner(self) -> 'SolverConfig':
    return replace(self, rel_tolerance=self.rel_tolerance / INNER_TOLERANCE_DIVISOR)
