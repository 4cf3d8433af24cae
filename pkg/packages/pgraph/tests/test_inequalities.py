import math

import pytest

from pgraph.domain.model.reports import GridSpec, InequalityPoint
from pgraph.exceptions import EmptyGridError, ExponentError
from pgraph.inequalities import (
    calibrated_upper_constant,
    constant_cp,
    ineq1_check,
    ineq1_grid,
    ineq2_sides,
    ineq34_check,
    ineq34_grid,
    ineq5_check,
    ineq5_constants,
    ineq5_grid,
    lindqvist_check,
    lindqvist_constant,
    lindqvist_grid,
    ptriangle_check,
    scan_equivalence,
)

COARSE = GridSpec(a_min=-3.0, a_max=3.0, a_step=0.05, t_step=0.01)


class TestScanEquivalence:
    def test_ineq2_is_an_identity_at_p2(self):
        result = scan_equivalence("ineq2", 2.0, COARSE)

        assert result.inf_ratio == pytest.approx(1.0, abs=1e-9)
        assert result.sup_ratio == pytest.approx(1.0, abs=1e-9)
        assert result.excluded > 0

    def test_ratio_is_lhs_over_rhs(self):
        result = scan_equivalence("ineq2", 3.0, COARSE)

        for point, ratio in ((result.argmin, result.inf_ratio), (result.argmax, result.sup_ratio)):
            lhs, rhs = ineq2_sides(InequalityPoint(a=point.a, t=point.t, p=3.0))
            assert ratio == pytest.approx(lhs / rhs, rel=1e-9)

    @pytest.mark.parametrize("kernel", ["ineq2", "gsr_like", "corollary"])
    @pytest.mark.parametrize("p", [1.5, 3.0])
    def test_ratios_are_bounded_away_from_zero(self, kernel, p):
        result = scan_equivalence(kernel, p, COARSE)

        assert 0 < result.inf_ratio <= result.sup_ratio < math.inf
        assert result.evaluated > 0

    def test_unknown_kernel(self):
        with pytest.raises(ValueError):
            scan_equivalence("nope", 2.0)

    def test_p_one_rejected(self):
        with pytest.raises(ExponentError):
            scan_equivalence("ineq2", 1.0, COARSE)

    def test_empty_grid(self):
        with pytest.raises(EmptyGridError):
            scan_equivalence("ineq2", 2.0, GridSpec(a_min=1.0, a_max=0.0))

    def test_deterministic(self):
        assert scan_equivalence("gsr_like", 3.0, COARSE) == scan_equivalence("gsr_like", 3.0, COARSE)


class TestPointwise:
    def test_ineq2_at_p2(self):
        lhs, rhs = ineq2_sides(InequalityPoint(a=-1.5, t=0.25, p=2.0))

        assert lhs == pytest.approx(rhs)

    def test_ineq2_precise_matches_float(self):
        point = InequalityPoint(a=0.3, t=0.6, p=3.0)

        assert ineq2_sides(point, precise=True) == pytest.approx(ineq2_sides(point))

    def test_ineq2_right_side_vanishes_at_corner(self):
        _, rhs = ineq2_sides(InequalityPoint(a=1.0, t=1.0, p=1.5), precise=True)

        assert rhs == 0.0

    def test_ineq2_rejects_p_one(self):
        with pytest.raises(ExponentError):
            ineq2_sides(InequalityPoint(a=0.0, t=0.5, p=1.0))

    @pytest.mark.parametrize(
        "a, t, C, upper, lower",
        [
            (0.0, 0.0, 2.0, True, True),
            (0.0, 0.0, 1.99, False, True),
            (0.99, 0.99, 0.51, True, False),
            (0.99, 0.99, 0.5, False, True),
        ],
    )
    def test_ineq1_optimal_constants(self, a, t, C, upper, lower):
        result = ineq1_check(a, t, C)

        assert (result.upper_holds, result.lower_holds) == (upper, lower)

    def test_ineq1_grid(self):
        assert ineq1_grid(2.0, "upper", COARSE).holds
        assert ineq1_grid(0.5, "lower", COARSE).holds

        broken = ineq1_grid(1.99, "upper", COARSE)
        assert not broken.holds
        assert broken.witness is not None

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_ineq34(self, p):
        assert ineq34_check(-2.0, 0.3, p)
        assert ineq34_grid(p, COARSE).holds

    def test_ptriangle(self):
        assert ptriangle_check(1.0, -3.0, 2.5)
        assert ptriangle_check(1.0, 1.0, 0.0)
        with pytest.raises(ExponentError):
            ptriangle_check(1.0, 1.0, -0.5)

    @pytest.mark.parametrize("p, expected", [(0.5, (math.sqrt(2), 1.0)), (1.0, (1.0, 1.0)), (3.0, (1.0, 0.25))])
    def test_ineq5_constants(self, p, expected):
        assert ineq5_constants(p) == pytest.approx(expected)

    def test_ineq5(self):
        assert ineq5_check(1.0, 1.0, 3.0)
        assert ineq5_check(0.0, 2.0, 0.5)
        assert ineq5_grid(2.5, bound=3.0, step=0.05).holds

    def test_ineq5_rejects_negative_arguments(self):
        with pytest.raises(ValueError):
            ineq5_check(-1.0, 1.0, 2.0)


class TestLindqvist:
    def test_constant(self):
        assert lindqvist_constant(2.0) == pytest.approx(1.0)
        assert lindqvist_constant(3.0) == pytest.approx(1 / 3)
        assert lindqvist_constant(1.5) == pytest.approx(3 * 1.5 * 0.5 / 16)

    def test_equality_at_p2(self):
        result = lindqvist_check(1.0, 0.0, 2.0)

        assert result.holds
        assert result.slack == pytest.approx(0.0)

    def test_zero_fraction_convention(self):
        assert lindqvist_check(0.0, 0.0, 1.5).holds

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_grid(self, p):
        assert lindqvist_grid(p, bound=2.0, step=0.05).holds


class TestConstants:
    def test_cp_at_two(self):
        assert constant_cp(2.0) == pytest.approx(0.5, abs=1e-12)

    def test_cp_at_three(self):
        assert constant_cp(3.0) == pytest.approx(1 - math.sqrt(2) / 2, abs=1e-9)

    @pytest.mark.parametrize("p", [2.5, 3.0, 4.0])
    def test_cp_range(self, p):
        assert 0 < constant_cp(p) <= 0.5

    def test_cp_needs_p_at_least_two(self):
        with pytest.raises(ExponentError):
            constant_cp(1.5)

    def test_upper_constant(self):
        assert calibrated_upper_constant(2.0) == 1.0
        with pytest.raises(ExponentError):
            calibrated_upper_constant(3.0)
