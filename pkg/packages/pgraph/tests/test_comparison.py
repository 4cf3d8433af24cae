import numpy as np
import pytest

from pgraph.criticality import gsr_criticality_transfer, liouville_check, proper_subset_check
from pgraph.criticality.comparison import simplified_weights
from pgraph.energy import energy, simplified_energy_1
from pgraph.exceptions import HypothesisError
from pgraph.models import ExhaustibleModel, random_function

RADII = [4, 8, 16]


def ones(g):
    return np.ones(g.vertex_count)


def tilted(g):
    """1 + n / (2N) on the integer window of radius N; harmonic for every p."""
    labels = np.asarray(g.labels, dtype=float)
    return 1.0 + labels / (2 * labels.max())


@pytest.fixture
def integers():
    return ExhaustibleModel(family="int_line")


class TestProperSubset:
    def test_capacity_stays_positive(self, integers):
        report = proper_subset_check(integers, 2, [4, 8], lambda g: g.subset([-1, 0, 1]), ones)

        assert report.holds
        assert report.vertex == -1
        assert report.capacities == pytest.approx([4 / 3, 4 / 3], rel=1e-6)
        assert report.floor == pytest.approx(4 / 3, rel=1e-6)

    def test_explicit_vertex(self, integers):
        report = proper_subset_check(integers, 2, [4], lambda g: g.subset([-1, 0, 1]), ones, vertex=0)

        assert report.vertex == 0
        assert report.capacities[0] == pytest.approx(1.0, rel=1e-6)

    @pytest.mark.parametrize("labels", [[-1, 1], [3, 4]])
    def test_subset_hypotheses(self, integers, labels):
        with pytest.raises(HypothesisError):
            proper_subset_check(integers, 2, [4], lambda g: g.subset(labels), ones)

    def test_witness_must_be_superharmonic(self, integers):
        def convex(g):
            labels = np.asarray(g.labels, dtype=float)
            return 1.0 + labels**2

        with pytest.raises(HypothesisError):
            proper_subset_check(integers, 2, [4], lambda g: g.subset([-1, 0, 1]), convex)


class TestLiouville:
    def test_weaker_comparison_functional_is_critical(self, integers):
        verdict = liouville_check(integers, integers.scaled(0.5), ones, ones, 1.0, 1.0, 2, RADII)

        assert verdict.status == "critical"
        assert verdict.failing == []
        assert all(verdict.hypotheses.values())
        assert verdict.transported_energies == pytest.approx([0.25, 0.125, 0.0625], rel=1e-6)

    def test_stronger_comparison_functional_fails_weight_dominance(self, integers):
        verdict = liouville_check(integers, integers.scaled(4.0), ones, ones, 1.0, 1.0, 2, RADII)

        assert verdict.status == "hypotheses_not_met"
        assert verdict.failing == ["c"]

    def test_non_critical_base_fails_first_hypothesis(self):
        model = ExhaustibleModel(family="nat_line")
        verdict = liouville_check(model, model.scaled(0.5), ones, ones, 1.0, 1.0, 2, RADII)

        assert verdict.status == "hypotheses_not_met"
        assert "a" in verdict.failing

    def test_alpha_must_be_positive(self, integers):
        with pytest.raises(ValueError):
            liouville_check(integers, integers, ones, ones, 0.0, 1.0, 2, RADII)


class TestTransfer:
    def test_simplified_weights_carry_h_u1(self, random_graphs, rng):
        g = random_graphs[0]
        u = rng.uniform(0.5, 2.0, g.vertex_count)
        phi = random_function(g, 0)

        weighted = simplified_weights(g, u, 3)

        assert energy(weighted, phi, 3).total == pytest.approx(simplified_energy_1(g, u, phi, 3))

    def test_harmonic_tilt_above_two(self, integers):
        report = gsr_criticality_transfer(integers, tilted, 3, RADII)

        assert report.base.classification == "critical_trend"
        assert report.transferred.classification == "critical_trend"
        assert report.ground_state_one is not None
        assert report.shifted is None
        assert report.transfers

    def test_below_two_uses_the_shifted_functional(self, integers):
        report = gsr_criticality_transfer(integers, ones, 1.5, RADII)

        assert report.shifted is not None
        assert report.ground_state_one is None
        assert report.shifted.classification == report.base.classification == "critical_trend"
        assert report.transfers

    def test_requires_harmonic_u_above_two(self, integers):
        def convex(g):
            labels = np.asarray(g.labels, dtype=float)
            return 1.0 + (labels / labels.max()) ** 2

        with pytest.raises(HypothesisError):
            gsr_criticality_transfer(integers, convex, 3, RADII)

    def test_requires_positive_u(self, integers):
        with pytest.raises(HypothesisError):
            gsr_criticality_transfer(integers, lambda g: np.asarray(g.labels, dtype=float), 2, RADII)
