"""
ReportFile output: CSV with a fixed header (see probe_report.HEADER), one row per probe
and a closing summary row. Files are written to a temporary sibling and renamed into
place, so a report is either complete or absent.
"""
import csv
import io
import os
import tempfile
from typing import List, Optional

from tenacity import retry, stop_after_attempt, wait_exponential

from lib import probe_report
from lib.probe_report import ProbeReport

OUTPUT_FOLDER = "output"


def default_report_path(folder: str, suite: str, seed: Optional[int]) -> str:
  seed_part = f"-s{seed}" if seed is not None else ""
  return os.path.join(folder, f"{suite}{seed_part}.csv")


def render_report(reports: List[ProbeReport], probe: str, tolerance: float, seed: Optional[int],
                  tolerance_source: str) -> str:
  stream = io.StringIO()
  writer = csv.writer(stream, lineterminator="\n")
  writer.writerow(probe_report.HEADER)
  for report in reports:
    writer.writerow(report.to_row())
  writer.writerow(probe_report.summary_row(reports, probe, tolerance, seed, tolerance_source))
  return stream.getvalue()


class ReportOutput:

  def __init__(self, path: str) -> None:
    self.path = path

  @retry(
      stop=stop_after_attempt(4), wait=wait_exponential(multiplier=1, min=1, max=8), reraise=True)
  def flush(self, content: str) -> None:
    folder = os.path.dirname(self.path) or "."
    os.makedirs(folder, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(prefix=".report-", suffix=".tmp", dir=folder)
    try:
      with os.fdopen(fd, 'w', newline='') as stream:
        stream.write(content)
      os.replace(temp_path, self.path)
    except BaseException:
      if os.path.exists(temp_path):
        os.remove(temp_path)
      raise

  def save_reports(self, reports: List[ProbeReport], probe: str, tolerance: float,
                   seed: Optional[int], tolerance_source: str) -> None:
    self.flush(render_report(reports, probe, tolerance, seed, tolerance_source))

  def get_existing_reports(self) -> List[ProbeReport]:
    """Every probe row of the file; the summary row is skipped."""
    if not os.path.exists(self.path):
      return []
    with open(self.path, newline='') as stream:
      rows = list(csv.reader(stream))
    header, values = rows[0], rows[1:]
    return [probe_report.from_row(header, row) for row in values if row[0] != "summary"]
