import math

import pytest
from hypothesis import example, given

from lib import probes
from lib.errors import InputError, PremiseError, QuasiNormWarning
from lib.grid import ExponentField, FunctionSequence, Grid, SimpleFunction
from lib.instances import InstanceSpec
from lib.probe_report import STATUS_CLOSED, STATUS_DEGENERATE, STATUS_EXHAUSTED, \
    STATUS_FINDING, STATUS_OK, STATUS_PREMISE_FAILED
from lib.solver_config import SolverConfig
from lib.solvers import ComponentWeights
from tests.strategies import problems

ONE = ComponentWeights([1.0])

WIDE = Grid([1.0, 1.0])
WIDE_PAIR = (WIDE, ExponentField.constant(WIDE, 2.0), ExponentField(WIDE, [1.1, 6.0]),
             FunctionSequence.from_rows(WIDE, [[1.0, 0.0], [0.0, 1e-50]]),
             FunctionSequence.from_rows(WIDE, [[0.0, 1e40], [1e-20, 0.0]]))


@pytest.fixture
def squares(unit_grid, constant_fields):
  """p = q = 2 on one unit cell."""
  return constant_fields(unit_grid, 2.0, 2.0)


@pytest.fixture
def ones(unit_grid, sequence):
  return sequence(unit_grid, [1.0])


class TestTriangle:

  def test_euclidean_pair(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    report = probes.triangle_check(
        sequence(unit_grid, [3.0], [0.0]), sequence(unit_grid, [0.0], [4.0]), p, q, cfg)
    assert report.lhs == pytest.approx(5.0, rel=1e-10)
    assert report.rhs == pytest.approx(7.0, rel=1e-10)
    assert report.passed and report.margin > 0

  def test_equal_arguments(self, half_grid, sequence, cfg):
    p = ExponentField(half_grid, [1.5, 3.0])
    q = ExponentField(half_grid, [2.0, 4.0])
    f = sequence(half_grid, [0.2, -0.7], [1.1, 0.0])
    report = probes.triangle_check(f, f, p, q, cfg)
    assert report.lhs == pytest.approx(report.rhs, rel=1e-10)
    assert report.passed

  def test_pads_shorter_sequence(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    report = probes.triangle_check(
        sequence(unit_grid, [3.0]), sequence(unit_grid, [0.0], [4.0]), p, q, cfg)
    assert report.lhs == pytest.approx(5.0, rel=1e-10)

  @given(problems(pairs=True))
  @example(WIDE_PAIR)
  def test_random_normable_pairs_pass(self, problem):
    _, p, q, f, g = problem
    assert probes.triangle_check(f, g, p, q, SolverConfig()).passed


class TestStrictConvexity:

  def test_orthogonal_pair(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    report = probes.strict_convexity_probe(
        sequence(unit_grid, [1.0], [0.0]), sequence(unit_grid, [0.0], [1.0]), p, q, cfg)
    assert report.lhs == pytest.approx(0.5, rel=1e-10)
    assert report.margin == pytest.approx(0.5, rel=1e-9)
    assert report.passed and not report.quantities['proportional']

  def test_proportional_pair(self, half_grid, sequence, cfg):
    p = ExponentField(half_grid, [1.5, 3.0])
    q = ExponentField(half_grid, [2.0, 4.0])
    f = sequence(half_grid, [0.2, -0.7], [1.1, 0.0])
    report = probes.strict_convexity_probe(f, f.scaled(2.0), p, q, cfg)
    assert report.quantities['proportional']
    assert report.lhs == pytest.approx(1.0, abs=1e-10)
    assert report.passed

  def test_zero_input(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    with pytest.raises(InputError):
      probes.strict_convexity_probe(
          sequence(unit_grid, [0.0]), sequence(unit_grid, [1.0]), p, q, cfg)

  @given(problems(pairs=True))
  @example(WIDE_PAIR)
  def test_random_midpoints_stay_in_the_unit_ball(self, problem):
    _, p, q, f, g = problem
    report = probes.strict_convexity_probe(f, g, p, q, SolverConfig())
    assert report.lhs <= 1 + 1e-9


class TestLemmaCrossing:

  def test_contradiction_branch_is_a_finding(self, ones, squares, cfg):
    p, q = squares
    report = probes.lemma_crossing_probe(ones, ones, ONE, 1, 0.4, 0.9, p, q, cfg)
    assert report.status == STATUS_FINDING
    assert report.r_star == pytest.approx(0.7, rel=1e-10)
    assert report.quantities['premise'] == pytest.approx((2 / 1.3)**2, rel=1e-12)
    assert report.flagged

  def test_premise_failure(self, ones, squares, cfg):
    p, q = squares
    with pytest.raises(PremiseError) as info:
      probes.lemma_crossing_probe(ones, ones, ONE, 1, 0.8, 1.4, p, q, cfg)
    assert info.value.measured == pytest.approx((2 / 2.2)**2, rel=1e-12)

  def test_equal_scales_are_degenerate(self, ones, squares, cfg):
    p, q = squares
    report = probes.lemma_crossing_probe(ones, ones, ONE, 1, 0.5, 0.5, p, q, cfg)
    assert report.status == STATUS_DEGENERATE
    assert report.passed and not report.flagged

  def test_crossing_inside_the_interval(self, ones, squares, cfg):
    p, q = squares
    report = probes.lemma_crossing_probe(ones, ones, ONE, 1, 0.3, 1.2, p, q, cfg)
    assert report.status == STATUS_OK and report.passed
    assert report.r_star == pytest.approx(0.5, rel=1e-10)
    assert abs(report.lhs - 1) <= 1e-10
    # (1/1 + 1/2)^2
    assert report.rhs == pytest.approx(2.25, rel=1e-9)
    assert report.quantities['monotone']

  def test_signed_input_refused(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    with pytest.raises(InputError, match="nonnegative"):
      probes.lemma_crossing_probe(
          sequence(unit_grid, [-1.0]), sequence(unit_grid, [1.0]), ONE, 1, 0.3, 1.2, p, q, cfg)

  def test_bad_arguments(self, ones, squares, cfg):
    p, q = squares
    with pytest.raises(InputError):
      probes.lemma_crossing_probe(ones, ones, ONE, 2, 0.3, 1.2, p, q, cfg)
    with pytest.raises(InputError):
      probes.lemma_crossing_probe(ones, ones, ONE, 1, 1.2, 0.3, p, q, cfg)
    with pytest.raises(InputError):
      probes.lemma_crossing_probe(ones, ones, ComponentWeights([0.0]), 1, 0.3, 1.2, p, q, cfg)

  def test_variable_exponents(self, half_grid, cfg):
    p = ExponentField(half_grid, [2.0, 3.0])
    q = ExponentField(half_grid, [1.5, 2.5])
    f = FunctionSequence.from_rows(half_grid, [[1.0, 0.5]])
    g = FunctionSequence.from_rows(half_grid, [[0.2, 2.0]])
    zeta = ComponentWeights([0.8])
    premise = probes.crossing_premise(f, g, zeta, 1, 0.1, 0.6, p, q)
    assert premise > 1
    report = probes.lemma_crossing_probe(f, g, zeta, 1, 0.1, 0.6, p, q, cfg)
    assert report.passed
    if report.status == STATUS_OK:
      assert report.rhs > 1 + 1e-10


class TestIteratedSearch:

  def test_premise_fails_at_stage_one(self, ones, squares, cfg):
    p, q = squares
    report = probes.iterated_crossing_search(ones, ones, ONE, 1, 0.8, 1.4, p, q, cfg)
    assert report.status == STATUS_PREMISE_FAILED
    assert report.quantities['sequence'] == []
    assert report.quantities['premise_modular'] == pytest.approx((2 / 2.2)**2, rel=1e-12)
    assert report.passed

  def test_equal_scales(self, ones, squares, cfg):
    p, q = squares
    report = probes.iterated_crossing_search(ones, ones, ONE, 1, 0.5, 0.5, p, q, cfg)
    assert report.status == STATUS_DEGENERATE
    assert report.lhs == pytest.approx(4.0)
    assert report.quantities['terminal_closes']

  def test_second_crossing_leaves_the_interval(self, ones, squares, cfg):
    p, q = squares
    report = probes.iterated_crossing_search(ones, ones, ONE, 1, 0.3, 1.2, p, q, cfg)
    assert report.quantities['sequence'] == pytest.approx([0.5], rel=1e-10)
    # 1/(1+r) + 1/(2+r) = 1
    golden = (math.sqrt(5) - 1) / 2
    assert report.quantities['outside_crossing'] == pytest.approx(golden, rel=1e-10)
    assert report.status == STATUS_FINDING
    assert report.lhs == pytest.approx(0.5, rel=1e-10)
    assert report.rhs == pytest.approx(0.9)
    assert report.quantities['stages'] == 2

  def test_stage_cap(self, ones, squares, cfg):
    p, q = squares
    report = probes.iterated_crossing_search(
        ones, ones, ONE, 1, 0.3, 1.2, p, q, cfg, max_stages=1)
    assert report.quantities['stages'] == 1
    assert report.quantities['partial_sums'] == pytest.approx([0.5], rel=1e-10)
    assert report.status == STATUS_EXHAUSTED

  def test_crossing_that_fills_the_gap_closes_the_interval(self, ones, squares, cfg):
    p, q = squares
    # Stage one solves (2 / (1.3 + r))^2 = 1, so r = 0.7 = mu2 - mu1.
    report = probes.iterated_crossing_search(ones, ones, ONE, 1, 0.3, 1.0, p, q, cfg)
    assert report.status == STATUS_CLOSED
    assert report.passed and not report.flagged
    assert report.quantities['stages'] == 1
    assert report.lhs == pytest.approx(report.rhs, rel=1e-11)


class TestOracles:

  def test_constant_exponent_oracle(self, unit_grid, sequence, cfg):
    report = probes.constant_exponent_oracle(sequence(unit_grid, [3.0], [4.0]), 2.0, 2.0, cfg)
    assert report.lhs == pytest.approx(5.0, rel=1e-10)
    assert report.rhs == pytest.approx(5.0, rel=1e-12)
    assert report.passed

  def test_oracle_on_zero(self, unit_grid, sequence, cfg):
    report = probes.constant_exponent_oracle(sequence(unit_grid, [0.0]), 3.0, 7.0, cfg)
    assert (report.lhs, report.rhs) == (0.0, 0.0)
    assert report.passed

  def test_homogeneity(self, half_grid, sequence, cfg):
    p = ExponentField(half_grid, [1.5, 3.0])
    q = ExponentField(half_grid, [2.0, 4.0])
    report = probes.homogeneity_check(sequence(half_grid, [0.2, -0.7]), -3.5e4, p, q, cfg)
    assert report.passed
    assert report.quantities['c'] == -3.5e4

  def test_unit_ball(self, half_grid, sequence, cfg):
    p = ExponentField(half_grid, [1.5, 3.0])
    q = ExponentField(half_grid, [2.0, 4.0])
    report = probes.unit_ball_check(sequence(half_grid, [0.2, -0.7], [3.0, 1.0]), p, q, cfg)
    assert report.passed
    assert report.lhs == pytest.approx(1.0, abs=1e-10)

  def test_unit_ball_rejects_zero(self, unit_grid, squares, sequence, cfg):
    p, q = squares
    with pytest.raises(InputError):
      probes.unit_ball_check(sequence(unit_grid, [0.0]), p, q, cfg)

  def test_inner_solver_oracle(self, unit_grid, constant_fields, cfg):
    p, q = constant_fields(unit_grid, 2.0, 3.0)
    report = probes.inner_solver_oracle(
        SimpleFunction.constant(unit_grid, 2.0), p, q, cfg, points=20001)
    assert report.lhs == pytest.approx(8.0, rel=1e-10)
    assert report.passed

  def test_inner_solver_oracle_variable(self, cfg):
    grid = Grid([0.2, 0.3, 0.5])
    p = ExponentField(grid, [1.2, 4.0, 2.5])
    q = ExponentField(grid, [3.0, 1.4, 2.0])
    report = probes.inner_solver_oracle(SimpleFunction(grid, [0.3, -2.0, 1.0]), p, q, cfg,
                                        points=50001)
    assert report.passed
    assert report.quantities['grid_lower'] <= report.lhs * (1 + 1e-12)


class TestQuasiScan:

  def test_constant_exponent_violation(self, unit_grid, constant_fields, sequence, cfg):
    p, q = constant_fields(unit_grid, 2.0, 0.5, relaxed=True)
    with pytest.warns(QuasiNormWarning):
      report = probes.triangle_check(
          sequence(unit_grid, [3.0], [0.0]), sequence(unit_grid, [0.0], [4.0]), p, q, cfg)
    assert report.lhs == pytest.approx((math.sqrt(3) + 2)**2, rel=1e-9)
    assert report.rhs == pytest.approx(7.0, rel=1e-9)
    assert not report.passed

  def test_empty_scan(self, cfg):
    spec = InstanceSpec(allow_quasi=True)
    assert probes.quasi_norm_boundary_scan(spec, 0, cfg) == []

  def test_needs_allow_quasi(self, cfg):
    with pytest.raises(InputError):
      probes.quasi_norm_boundary_scan(InstanceSpec(), 3, cfg)

  def test_normable_ranges_find_nothing(self, cfg):
    spec = InstanceSpec(seed=4, allow_quasi=True, p_range=(1.5, 3.0), q_range=(1.5, 3.0))
    reports = probes.quasi_norm_boundary_scan(spec, 5, cfg)
    assert [r.trial for r in reports] == [1, 2, 3, 4, 5]
    assert all(r.passed for r in reports)

  def test_violations_keep_their_instance(self, cfg):
    spec = InstanceSpec(
        seed=1, allow_quasi=True, p_range=(1.5, 2.0), q_range=(0.3, 0.5), component_count=3)
    with pytest.warns(QuasiNormWarning):
      reports = probes.quasi_norm_boundary_scan(spec, 10, cfg)
    for report in reports:
      if not report.passed:
        assert report.status == STATUS_FINDING
        f, g, p, q = report.quantities['instance']
        assert f.grid == p.grid
