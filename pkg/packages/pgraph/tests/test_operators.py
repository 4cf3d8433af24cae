import numpy as np
import pytest

from pgraph.domain.model.reports import HarmonicityKind
from pgraph.exceptions import ExponentError, NotInteriorError
from pgraph.models import hardy_function, int_line, nat_line, random_function
from pgraph.operators import (
    classify,
    divergence,
    edge_flux,
    gradient,
    greens_residual,
    p_laplacian,
    phi_p,
    schroedinger_apply,
)


class TestPhiP:
    @pytest.mark.parametrize(
        "t, p, expected",
        [
            (0.0, 1.5, 0.0),
            (0.0, 1.0, 0.0),
            (-2.0, 3.0, -4.0),
            (2.0, 2.0, 2.0),
            (4.0, 1.5, 2.0),
            (-3.0, 1.0, -1.0),
        ],
    )
    def test_values(self, t, p, expected):
        assert phi_p(t, p) == pytest.approx(expected)

    def test_vectorized(self):
        values = phi_p(np.array([-1.0, 0.0, 2.0]), 3)

        assert values.tolist() == [-1.0, 0.0, 4.0]

    def test_rejects_p_below_one(self):
        with pytest.raises(ExponentError):
            phi_p(1.0, 0.5)


class TestSchroedinger:
    def test_gradient(self):
        assert gradient(np.array([1.0, 3.0]), 0, 1) == -2.0

    def test_triangle_p2(self, triangle):
        values = schroedinger_apply(triangle, [1.0, 2.0, 0.0], 2)

        assert values[0] == pytest.approx(-0.5)
        assert values[1] == pytest.approx(3.0)
        assert np.isnan(values[2])

    def test_triangle_p3(self, triangle):
        values = schroedinger_apply(triangle, [1.0, 2.0, 0.0], 3)

        assert values[0] == pytest.approx(-0.5)
        assert values[1] == pytest.approx(5.5)

    def test_p_laplacian_at_interior_vertex(self):
        g = nat_line(2)

        assert p_laplacian(g, [0.0, 1.0, 0.0], 1, 3) == pytest.approx(2.0)

    def test_p_laplacian_outside_interior(self):
        with pytest.raises(NotInteriorError):
            p_laplacian(nat_line(2), [0.0, 1.0, 0.0], 0, 2)

    def test_flux_is_antisymmetric(self, triangle):
        flux = edge_flux(triangle, [1.0, 2.0, 0.0], 2.5).toarray()

        np.testing.assert_allclose(flux, -flux.T)

    def test_divergence_matches_laplacian(self, random_graphs, rng):
        for g in random_graphs[:10]:
            f = rng.uniform(-1.0, 1.0, g.vertex_count)
            x = int(np.flatnonzero(g.interior)[0])

            lf = divergence(g, edge_flux(g, f, 2.5))

            assert lf[x] == pytest.approx(p_laplacian(g, f, x, 2.5))


class TestGreensFormula:
    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 2.5, 3.0, 4.0])
    def test_residual_vanishes_on_random_graphs(self, random_graphs, rng, p):
        for seed, g in enumerate(random_graphs):
            f = rng.uniform(-1.0, 1.0, g.vertex_count)
            phi = random_function(g, seed)

            assert greens_residual(g, f, phi, g.interior, p) <= 1e-9

    def test_proper_subset(self, half_line):
        f = np.linspace(0.0, 1.0, half_line.vertex_count) ** 2
        phi = np.zeros(half_line.vertex_count)
        phi[2:5] = [1.0, -0.5, 2.0]

        assert greens_residual(half_line, f, phi, half_line.subset([2, 3, 4]), 3) <= 1e-12


class TestClassify:
    def test_constant_is_harmonic(self):
        g = int_line(4)

        result = classify(g, np.ones(g.vertex_count), g.interior, 3)

        assert result.kind == HarmonicityKind.HARMONIC
        assert result.is_superharmonic and result.is_subharmonic

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_hardy_function_is_superharmonic(self, half_line, p):
        result = classify(half_line, hardy_function(half_line, p), half_line.interior, p)

        assert result.kind == HarmonicityKind.SUPERHARMONIC
        assert result.min_value > 0

    def test_negated_hardy_function_is_subharmonic(self, half_line):
        result = classify(half_line, -hardy_function(half_line, 2), half_line.interior, 2)

        assert result.kind == HarmonicityKind.SUBHARMONIC

    def test_bump_is_neither(self):
        g = nat_line(4)

        result = classify(g, [0.0, 0.0, 1.0, 0.0, 0.0], g.interior, 2)

        assert result.kind == HarmonicityKind.NEITHER
        assert result.min_value == pytest.approx(-1.0)
        assert result.max_value == pytest.approx(2.0)

    def test_explicit_tolerance(self):
        g = nat_line(4)

        result = classify(g, [0.0, 0.0, 1e-3, 0.0, 0.0], g.interior, 2, tol=1e-2)

        assert result.kind == HarmonicityKind.HARMONIC
