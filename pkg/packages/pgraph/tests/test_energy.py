import math

import numpy as np
import pytest
from pydantic import ValidationError

from pgraph.domain.model.reports import EnergyReport
from pgraph.energy import (
    bracket,
    corollary_bounds_check,
    energy,
    gsr_check,
    picone_residual,
    simplified_energy,
    simplified_energy_1,
    simplified_energy_2,
    simplified_energy_3,
)
from pgraph.exceptions import ExponentError, NonNegativityError, SupportError
from pgraph.models import nat_line, random_function


@pytest.fixture
def battery(random_graphs, rng):
    """(graph, positive u, phi supported in the interior) triples."""
    return [(g, rng.uniform(0.5, 2.0, g.vertex_count), random_function(g, seed)) for seed, g in enumerate(random_graphs)]


class TestEnergy:
    def test_indicator_on_half_line(self):
        assert energy(nat_line(4), [0.0, 1.0, 0.0, 0.0, 0.0], 3).total == pytest.approx(2.0)

    def test_breakdown_on_triangle(self, triangle):
        report = energy(triangle, [1.0, 2.0, 0.0], 2, with_terms=True)

        assert report.gradient_part == pytest.approx(9.5)
        assert report.potential_part == pytest.approx(2.0)
        assert report.total == pytest.approx(11.5)
        assert report.edge_terms == pytest.approx([1.0, 0.5, 8.0])

    def test_terms_omitted_by_default(self, triangle):
        assert energy(triangle, [1.0, 2.0, 0.0], 2).edge_terms is None

    def test_report_rejects_inconsistent_total(self):
        with pytest.raises(ValidationError):
            EnergyReport(total=1.0, gradient_part=0.0, potential_part=0.0)

    def test_homogeneous_of_degree_p(self, triangle):
        f = np.array([1.0, -2.0, 0.5])

        assert energy(triangle, 3 * f, 2.5).total == pytest.approx(3**2.5 * energy(triangle, f, 2.5).total)


class TestBracket:
    def test_weighted_sum(self, triangle):
        assert bracket(triangle, [1.0, 2.0, 0.0], [1.0, 1.0, 1.0]) == pytest.approx(5.0)

    def test_undefined_values_paired_with_zero(self, triangle):
        assert bracket(triangle, [1.0, 2.0, math.nan], [1.0, 1.0, 0.0]) == pytest.approx(5.0)


class TestGroundStateRepresentation:
    def test_equality_at_p2(self, battery):
        for g, u, phi in battery:
            report = gsr_check(g, u, phi, 2)

            assert report.lhs == pytest.approx(report.rhs, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("p", [1.5, 3.0])
    def test_picone_residual_nonnegative(self, battery, p):
        for g, u, phi in battery:
            residual = picone_residual(g, u, phi, p)

            assert residual >= -1e-10 * (1 + energy(g, u * phi, p).total)

    @pytest.mark.parametrize("p", [1.5, 3.0, 4.0])
    def test_ratio_is_positive_and_finite(self, battery, p):
        for g, u, phi in battery:
            report = gsr_check(g, u, phi, p)

            assert report.ratio is not None
            assert 0 < report.ratio < math.inf

    def test_zero_test_function_is_degenerate(self, triangle):
        report = gsr_check(triangle, [1.0, 1.0, 1.0], [0.0, 0.0, 0.0], 3)

        assert report.degenerate
        assert report.ratio is None

    def test_negative_u_rejected(self, triangle):
        with pytest.raises(NonNegativityError):
            gsr_check(triangle, [1.0, -1.0, 1.0], [1.0, 0.0, 0.0], 2)

    def test_phi_outside_interior_rejected(self, triangle):
        with pytest.raises(SupportError):
            gsr_check(triangle, [1.0, 1.0, 1.0], [0.0, 0.0, 1.0], 2)


class TestSimplifiedEnergies:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_constant_u_reduces_to_gradient_energy(self, battery, p):
        for g, _, phi in battery[:10]:
            one = np.ones(g.vertex_count)
            expected = energy(g, phi, p).gradient_part

            assert simplified_energy(g, one, phi, p) == pytest.approx(expected)
            assert simplified_energy_1(g, one, phi, p) == pytest.approx(expected)
            assert simplified_energy_3(g, one, phi, p) == pytest.approx(expected)

    def test_second_energy_at_p2(self, battery):
        g, u, phi = battery[0]

        assert simplified_energy_2(g, u, phi, 2) == pytest.approx(simplified_energy_1(g, u, phi, 2))

    def test_second_energy_needs_p_at_least_two(self, triangle):
        with pytest.raises(ExponentError):
            simplified_energy_2(triangle, [1.0, 1.0, 1.0], [1.0, 0.0, 0.0], 1.5)


class TestCorollaryBounds:
    def test_equality_at_p2(self, battery):
        for g, u, phi in battery[:10]:
            report = corollary_bounds_check(g, u, phi, 2)

            assert report.holds
            assert report.lower_constant == pytest.approx(1.0)
            assert report.upper_constant == 1.0
            assert report.lhs == pytest.approx(report.h_u1, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("p", [2.5, 3.0])
    def test_lower_bound(self, battery, p):
        for g, u, phi in battery:
            report = corollary_bounds_check(g, u, phi, p)

            assert report.holds
            assert report.upper_constant is None
            assert report.h_u2 is not None

    def test_upper_bound_below_two(self, battery):
        for g, u, phi in battery:
            report = corollary_bounds_check(g, u, phi, 1.5)

            assert report.holds
            assert report.lower_constant is None
            assert report.upper_constant > 1.0
