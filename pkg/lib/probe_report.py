from typing import Any, Dict, List, Optional

from lib.util import format_real

STATUS_OK = "ok"
STATUS_VIOLATION = "violation"
STATUS_FINDING = "finding"
STATUS_DEGENERATE = "degenerate"
STATUS_PREMISE_FAILED = "premise_failed"
STATUS_EXHAUSTED = "exhausted"
STATUS_CLOSED = "closed"

# Statuses that make a suite exit non-zero.
FLAGGED_STATUSES = (STATUS_VIOLATION, STATUS_FINDING)

HEADER = [
    "trial", "probe", "lhs", "rhs", "margin", "r_star", "pass", "tolerance", "seed", "status",
    "tolerance_source"
]


class ProbeReport:
  """
  Outcome of one probe on one instance. `margin` is always rhs - lhs as computed, so the
  raw slack behind every strict/non-strict verdict stays in the report.
  """

  def __init__(self,
               trial,
               probe: str,
               lhs: float,
               rhs: float,
               passed: bool,
               tolerance: float,
               seed: Optional[int] = None,
               status: Optional[str] = None,
               r_star: Optional[float] = None,
               tolerance_source: str = 'default',
               quantities: Optional[Dict[str, Any]] = None) -> None:
    self.trial = trial
    self.probe = probe
    self.lhs = lhs
    self.rhs = rhs
    self.margin = rhs - lhs
    self.r_star = r_star
    self.passed = bool(passed)
    self.tolerance = tolerance
    self.seed = seed
    self.status = status or (STATUS_OK if passed else STATUS_VIOLATION)
    self.tolerance_source = tolerance_source
    self.quantities = dict(quantities or {})

  @property
  def flagged(self) -> bool:
    return not self.passed or self.status in FLAGGED_STATUSES

  def __repr__(self) -> str:
    return (f"{{trial: {self.trial}, probe: {self.probe}, lhs: {self.lhs!r}, "
            f"rhs: {self.rhs!r}, margin: {self.margin!r}, r_star: {self.r_star!r}, "
            f"pass: {self.passed}, status: {self.status}, tolerance: {self.tolerance!r}}}")

  def to_row(self) -> List[str]:
    return [
        str(self.trial), self.probe,
        format_real(self.lhs),
        format_real(self.rhs),
        format_real(self.margin),
        format_real(self.r_star), "true" if self.passed else "false",
        format_real(self.tolerance), "" if self.seed is None else str(self.seed), self.status,
        self.tolerance_source
    ]


def summary_row(reports: List[ProbeReport], probe: str, tolerance: float, seed: Optional[int],
                tolerance_source: str) -> List[str]:
  passed = [r for r in reports if r.passed]
  margins = [r.margin for r in reports if r.margin == r.margin]
  if any(r.status == STATUS_VIOLATION or not r.passed for r in reports):
    status = "violations"
  elif any(r.status == STATUS_FINDING for r in reports):
    status = "findings"
  else:
    status = STATUS_OK
  return [
      "summary", probe,
      str(len(reports)),
      str(len(passed)),
      format_real(min(margins)) if margins else "", "",
      "true" if len(passed) == len(reports) else "false",
      format_real(tolerance), "" if seed is None else str(seed), status, tolerance_source
  ]


def _optional_float(text: str) -> Optional[float]:
  return float(text) if text else None


def from_row(header, row) -> ProbeReport:
  seed = row[header.index('seed')]
  report = ProbeReport(
      row[header.index('trial')],
      row[header.index('probe')],
      float(row[header.index('lhs')]),
      float(row[header.index('rhs')]),
      row[header.index('pass')] == 'true',
      float(row[header.index('tolerance')]),
      seed=int(seed) if seed else None,
      status=row[header.index('status')],
      r_star=_optional_float(row[header.index('r_star')]),
      tolerance_source=row[header.index('tolerance_source')])
  report.margin = float(row[header.index('margin')])
  return report
