"""
The elementary variable-exponent modular

    rho_p(f) = sum over cells of |f|^p(cell) * measure(cell)

and its lambda-scaled form used inside the mixed modular,

    rho_p(f / lambda^(1/q)) = sum over cells of |f|^p * lambda^(-p/q) * measure.

Both are exact finite sums because functions are simple. Non-finite terms are reported
as ModularOverflowError, never clamped.
"""
import math
from typing import Optional

import numpy as np

from lib.errors import InputError, ModularOverflowError
from lib.grid import ExponentField, FunctionSequence, SimpleFunction, require_same_grid


def _first_bad_cell(terms: np.ndarray) -> tuple:
  """(row, cell) of the first non-finite term; row is 0 for one-dimensional terms."""
  bad = np.argwhere(~np.isfinite(np.atleast_2d(terms)))
  return int(bad[0][0]), int(bad[0][1])


def modular_p(f: SimpleFunction, p: ExponentField) -> float:
  require_same_grid(f.grid, p.grid)
  magnitudes = np.abs(f.values)
  with np.errstate(over='ignore'):
    # 0 ** p == 0 for p > 0, so zero cells drop out without a log.
    terms = np.power(magnitudes, p.values) * f.grid.measures
  if not np.all(np.isfinite(terms)):
    raise ModularOverflowError(_first_bad_cell(terms)[1], 1.0)
  return math.fsum(terms)


def scaled_component_modular(f: SimpleFunction, p: ExponentField, q: ExponentField,
                             lam: float) -> float:
  require_same_grid(f.grid, p.grid, q.grid)
  if not lam > 0 or not math.isfinite(lam):
    raise InputError(f"lambda must be a positive finite number, got {lam!r}")
  if lam == 1.0:
    return modular_p(f, p)
  kernel = ModularKernel(FunctionSequence(f.grid, [f]), p, q)
  terms = kernel.terms(np.array([math.log(lam)]))
  return math.fsum(terms[0])


class ModularKernel:
  """
  Log-domain evaluator for a whole sequence at once.

  For row nu, outer scale mu and inner weight lambda_nu it evaluates
      sum_cells exp(p*log|f_nu| - p*log(mu) - (p/q)*log(lambda_nu) + log(measure)).
  With q omitted the lambda term vanishes and rows are plain rho_p(f_nu / mu).
  Zero cells carry log|f| = -inf and contribute exactly 0.
  """

  def __init__(self, sequence: FunctionSequence, p: ExponentField,
               q: Optional[ExponentField] = None) -> None:
    grids = [sequence.grid, p.grid] + ([q.grid] if q is not None else [])
    require_same_grid(*grids)
    self.p = p.values
    self.ratio = p.values / q.values if q is not None else np.zeros_like(p.values)
    magnitudes = np.abs(sequence.matrix)
    with np.errstate(divide='ignore'):
      self.log_abs = np.log(magnitudes)
      self.weighted = self.p * self.log_abs + np.log(sequence.grid.measures)
    self.rows = magnitudes.shape[0]
    self.max_abs = np.max(magnitudes, axis=1)

  @classmethod
  def for_norm(cls, sequence: FunctionSequence, p: ExponentField) -> 'ModularKernel':
    kernel = cls(sequence, p)
    kernel.ratio = p.values
    return kernel

  def terms(self, log_lam: np.ndarray, log_mu: float = 0.0, rows=None,
            saturate: bool = False) -> np.ndarray:
    weighted = self.weighted if rows is None else self.weighted[rows]
    exponent = weighted - self.p * log_mu - self.ratio * np.reshape(log_lam, (-1, 1))
    with np.errstate(over='ignore'):
      terms = np.exp(exponent)
    if not saturate and not np.all(np.isfinite(terms)):
      row, cell = _first_bad_cell(terms)
      with np.errstate(over='ignore'):
        lam = float(np.exp(np.reshape(log_lam, -1)[row if np.size(log_lam) > 1 else 0]))
        mu = float(np.exp(log_mu))
      raise ModularOverflowError(cell, lam, what=f"scaled modular (mu={mu!r})")
    return terms

  def evaluate(self, log_lam: np.ndarray, log_mu: float = 0.0, rows=None,
               saturate: bool = False) -> np.ndarray:
    """
    One modular value per selected row. With `saturate` an overflowing row reads as
    +inf instead of raising; only root bracketing uses that.
    """
    return np.sum(self.terms(log_lam, log_mu, rows, saturate), axis=1)

  def log_bracket(self, log_mu: float = 0.0, rows=None, pad: float = 0.0) -> tuple:
    """
    Per-row (lo, hi) in log(lambda) around the root of evaluate(.) = 1.

    One cell alone reaches 1 at (weighted - p*log(mu)) / ratio, so the root is at least
    the largest of those and at most that plus log(cells) / min(ratio).
    """
    weighted = self.weighted if rows is None else self.weighted[rows]
    with np.errstate(invalid='ignore'):
      cell_roots = (weighted - self.p * log_mu) / self.ratio
    lo = np.max(cell_roots, axis=1)
    spread = math.log(self.p.size) / float(np.min(self.ratio))
    return lo - pad, lo + spread + pad
