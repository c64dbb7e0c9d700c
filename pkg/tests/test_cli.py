import csv

import pytest

from lib.config import TOLERANCE_ENV
from lib.instance_file import parse_instance
from main import run_command

PAIR = """\
grid:
  dimension: 1
  cell_measures: [1.0]
p: [2.0]
q: [2.0]
components:
  - [3.0]
  - [4.0]
"""

SINGLE = """\
grid:
  cell_measures: [1.0]
p: [2.0]
q: [3.0]
components:
  - [2.0]
"""

WIDE = """\
grid:
  cell_measures: [1.0, 1.0]
p: [2.0, 2.0]
q: [1.1, 6.0]
components:
  - [1.0, 0.0]
  - [0.0, 1.0e-50]
"""

ONES = """\
grid:
  cell_measures: [1.0]
p: [2.0]
q: [2.0]
components:
  - [{value}]
"""


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
  monkeypatch.chdir(tmp_path)
  monkeypatch.delenv(TOLERANCE_ENV, raising=False)
  return tmp_path


def _file(tmp_path, name, text):
  path = tmp_path / name
  path.write_text(text)
  return str(path)


def _value(capsys):
  return float(capsys.readouterr().out.strip())


def _rows(path):
  with open(path, newline='') as stream:
    return list(csv.reader(stream))


class TestEvaluate:

  def test_norm(self, workdir, capsys):
    assert run_command(["norm", _file(workdir, "pair.yml", PAIR)]) == 0
    assert _value(capsys) == pytest.approx(5.0, rel=1e-10)

  def test_norm_with_entries_far_from_one(self, workdir, capsys):
    assert run_command(["norm", _file(workdir, "wide.yml", WIDE)]) == 0
    assert _value(capsys) == pytest.approx(1.0, rel=1e-10)

  def test_component_norm(self, workdir, capsys):
    assert run_command(["norm", _file(workdir, "pair.yml", PAIR), "--component", "2"]) == 0
    assert _value(capsys) == pytest.approx(4.0, rel=1e-10)

  def test_mixed_modular(self, workdir, capsys):
    assert run_command(["modular", _file(workdir, "pair.yml", PAIR)]) == 0
    assert _value(capsys) == pytest.approx(25.0, rel=1e-10)

  def test_component_modular(self, workdir, capsys):
    path = _file(workdir, "single.yml", SINGLE)
    assert run_command(["modular", path, "--component", "1"]) == 0
    assert _value(capsys) == pytest.approx(4.0, rel=1e-12)
    assert run_command(["modular", path, "--component", "1", "--lambda", "8"]) == 0
    assert _value(capsys) == pytest.approx(1.0, rel=1e-12)

  def test_component_weight(self, workdir, capsys):
    path = _file(workdir, "single.yml", SINGLE)
    assert run_command(["component-weight", path, "--component", "1"]) == 0
    assert _value(capsys) == pytest.approx(8.0, rel=1e-10)

  def test_lambda_needs_component(self, workdir):
    assert run_command(["modular", _file(workdir, "single.yml", SINGLE), "--lambda", "2"]) == 2

  def test_component_out_of_range(self, workdir):
    assert run_command(["norm", _file(workdir, "pair.yml", PAIR), "--component", "3"]) == 2

  def test_exponent_one_is_an_input_error(self, workdir, capsys):
    path = _file(workdir, "bad.yml", PAIR.replace("p: [2.0]", "p: [1.0]"))
    assert run_command(["norm", path]) == 2
    assert "bad.yml:4" in capsys.readouterr().err


class TestDispatch:

  def test_no_arguments(self):
    assert run_command([]) == 2

  def test_help(self):
    assert run_command(["--help"]) == 0

  def test_unknown_command(self):
    assert run_command(["frobnicate"]) == 2

  def test_bad_option(self):
    assert run_command(["verify", "triangle", "--trials", "many"]) == 2


class TestVerify:

  def _triangle(self, report, *extra):
    return run_command([
        "verify", "triangle", "--trials", "4", "--seed", "42", "--cells", "4", "--quiet",
        "--report", report
    ] + list(extra))

  def test_triangle_suite_writes_a_report(self, workdir):
    report = str(workdir / "triangle.csv")
    assert self._triangle(report) == 0
    rows = _rows(report)
    assert rows[0][0] == "trial"
    assert len(rows) == 6
    assert rows[-1][0] == "summary" and rows[-1][9] == "ok"

  def test_rerun_is_byte_identical(self, workdir):
    first, second = workdir / "a.csv", workdir / "b.csv"
    assert self._triangle(str(first)) == 0
    assert self._triangle(str(second)) == 0
    assert first.read_bytes() == second.read_bytes()

  def test_default_report_location(self, workdir):
    assert run_command(["verify", "unit-ball", "--trials", "2", "--seed", "7", "--quiet"]) == 0
    assert (workdir / "output" / "verify-unit-ball-s7.csv").exists()

  def test_env_tolerance_is_recorded(self, workdir, monkeypatch):
    monkeypatch.setenv(TOLERANCE_ENV, "1e-10")
    report = str(workdir / "env.csv")
    assert self._triangle(report) == 0
    first = _rows(report)[1]
    assert float(first[7]) == 1e-10
    assert first[10] == "env"

  def test_flag_beats_env(self, workdir, monkeypatch):
    monkeypatch.setenv(TOLERANCE_ENV, "1e-10")
    report = str(workdir / "flag.csv")
    assert self._triangle(report, "--rel-tolerance", "1e-9") == 0
    assert _rows(report)[1][10] == "flag"

  def test_file_quasi_scan_violation(self, workdir):
    f = _file(workdir, "f.yml", PAIR.replace("q: [2.0]", "q: [0.5]\nquasi: true")
              .replace("  - [4.0]", "  - [0.0]"))
    g = _file(workdir, "g.yml", PAIR.replace("q: [2.0]", "q: [0.5]\nquasi: true")
              .replace("  - [3.0]", "  - [0.0]"))
    with pytest.warns(Warning):
      assert run_command(["verify", "quasi-scan", "--instance", f, "--other", g]) == 1

  def test_file_oracle_needs_constant_exponents(self, workdir):
    text = SINGLE.replace("[1.0]", "[0.5, 0.5]").replace("p: [2.0]", "p: [2.0, 3.0]") \
        .replace("q: [3.0]", "q: [3.0, 3.0]").replace("  - [2.0]", "  - [2.0, 1.0]")
    assert run_command(["verify", "oracle", "--instance", _file(workdir, "v.yml", text)]) == 2


class TestProbe:

  def _probe(self, workdir, mu1, mu2, value="1.0"):
    path = _file(workdir, "ones.yml", ONES.format(value=value))
    return run_command([
        "probe", "lemma", "--instance", path, "--other", path, "--zeta", "1", "--mu1",
        str(mu1), "--mu2", str(mu2)
    ])

  def test_crossing_beyond_the_gap_is_a_finding(self, workdir):
    assert self._probe(workdir, 0.4, 0.9) == 1

  def test_crossing_inside_the_gap_passes(self, workdir):
    assert self._probe(workdir, 0.3, 1.2) == 0

  def test_failed_premise(self, workdir, capsys):
    assert self._probe(workdir, 0.8, 1.4) == 2
    assert "error" in capsys.readouterr().err

  def test_signed_input_refused(self, workdir):
    assert self._probe(workdir, 0.3, 1.2, value="-1.0") == 2

  def test_file_mode_needs_scales(self, workdir):
    path = _file(workdir, "ones.yml", ONES.format(value="1.0"))
    assert run_command(["probe", "iterate", "--instance", path, "--other", path]) == 2

  def test_iterate_suite(self, workdir):
    report = str(workdir / "iterate.csv")
    code = run_command([
        "probe", "iterate", "--trials", "3", "--seed", "5", "--cells", "3", "--quiet",
        "--report", report
    ])
    assert code in (0, 1)
    assert _rows(report)[-1][0] == "summary"


class TestGenerate:

  def test_generated_file_parses(self, workdir):
    out = workdir / "instance.yml"
    args = ["generate", "--seed", "9", "--cells", "5", "--components", "3", "--out", str(out)]
    assert run_command(args) == 0
    f, p, q = parse_instance(out)
    assert f.length == 3 and f.grid.cell_count == 5
    assert p.lower_bound > 1 and q.lower_bound > 1

  def test_stdout_is_deterministic(self, capsys):
    assert run_command(["generate", "--seed", "9"]) == 0
    first = capsys.readouterr().out
    assert run_command(["generate", "--seed", "9"]) == 0
    assert capsys.readouterr().out == first
    assert "components:" in first

  def test_quasi_instances_are_flagged(self, workdir):
    out = workdir / "quasi.yml"
    assert run_command(["generate", "--quasi", "--q", "0.5:0.9", "--out", str(out)]) == 0
    assert "quasi: true" in out.read_text()


class TestReport:

  def test_saved_suite_reads_back_clean(self, workdir, capsys):
    path = str(workdir / "triangle.csv")
    assert run_command([
        "verify", "triangle", "--trials", "3", "--seed", "42", "--cells", "4", "--quiet",
        "--report", path
    ]) == 0
    capsys.readouterr()
    assert run_command(["report", path]) == 0
    assert "3 rows (triangle), 3 passed" in capsys.readouterr().err

  def test_flagged_row_sets_the_exit_code(self, workdir):
    path = workdir / "lemma.csv"
    path.write_text("trial,probe,lhs,rhs,margin,r_star,pass,tolerance,seed,status,"
                    "tolerance_source\n"
                    "1,lemma,1,2,1,0.5,true,1e-12,7,finding,default\n"
                    "summary,lemma,1,1,1,,true,1e-12,,findings,default\n")
    assert run_command(["report", str(path)]) == 1

  def test_missing_or_malformed_report(self, workdir):
    assert run_command(["report", str(workdir / "absent.csv")]) == 2
    path = workdir / "bad.csv"
    path.write_text("a,b\n1,2\n")
    assert run_command(["report", str(path)]) == 2
