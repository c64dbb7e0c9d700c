from typing import Optional

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


class VarmixError(Exception):
  exit_code = EXIT_NUMERICAL


class InputError(VarmixError):
  exit_code = EXIT_INPUT


class InstanceFileError(InputError):
  """A malformed or invalid instance file. `line` is 1-based when known."""

  def __init__(self, message: str, path=None, line: Optional[int] = None) -> None:
    self.path = path
    self.line = line
    location = str(path) if path else "<instance>"
    if line is not None:
      location += f":{line}"
    super().__init__(f"{location}: {message}")


class PremiseError(InputError):
  """A probe or witness premise does not hold; `measured` is the offending value."""

  def __init__(self, message: str, measured: float) -> None:
    self.measured = measured
    super().__init__(f"{message} (measured {measured!r})")


class ModularOverflowError(VarmixError):

  def __init__(self, cell: int, scale: float, what: str = "modular") -> None:
    self.cell = cell
    self.scale = scale
    super().__init__(f"{what} overflowed at cell {cell} (scale {scale!r})")


class NonConvergenceError(VarmixError):

  def __init__(self, message: str, index: Optional[int] = None) -> None:
    self.index = index
    if index is not None:
      message = f"component {index}: {message}"
    super().__init__(message)


class QuasiNormWarning(UserWarning):
  pass
