import math

import numpy as np
import pytest

from pgraph.criticality import harnack_constant, harnack_verify, strict_positivity_check
from pgraph.exceptions import HypothesisError, NonNegativityError
from pgraph.models import erdos_renyi, hardy_function, nat_line
from pgraph.operators import schroedinger_apply

EXPONENTS = (1.5, 2.0, 3.0)


def connected_piece(g, rng, size):
    """Breadth-first prefix of the interior grown from a random interior vertex."""
    interior = np.flatnonzero(g.interior)
    order = [int(rng.choice(interior))]
    seen = set(order)
    for x in order:
        ids, _ = g.neighbors(x)
        for y in ids.tolist():
            if g.interior[y] and y not in seen:
                seen.add(y)
                order.append(y)
    mask = np.zeros(g.vertex_count, dtype=bool)
    mask[order[:size]] = True
    return mask


def random_case(seed):
    """Random graph, connected K, positive u and the f for which Hu = f u^{p-1} on the interior."""
    rng = np.random.default_rng(seed)
    p = EXPONENTS[seed % len(EXPONENTS)]
    g = erdos_renyi(8 + seed % 20, 0.3, seed=seed, potential_range=(-0.5, 0.5), interior_fraction=0.7)
    u = rng.uniform(0.5, 2.0, g.vertex_count)
    f = np.nan_to_num(schroedinger_apply(g, u, p) / u ** (p - 1))
    K = connected_piece(g, rng, int(rng.integers(1, 9)))
    return g, K, f, u, p


class TestHarnackConstant:
    def test_two_vertices_on_half_line(self, half_line):
        result = harnack_constant(half_line, half_line.subset([1, 2]), 0.0, 2)

        assert result.constant == pytest.approx(3.0)
        assert result.d_f == pytest.approx([2.0, 2.0])
        np.testing.assert_allclose(result.pair_bounds, [[1.0, 3.0], [3.0, 1.0]])
        assert result.vertices == [1, 2]

    def test_products_chain_along_paths(self, half_line):
        result = harnack_constant(half_line, half_line.subset([1, 2, 3]), 0.0, 2)

        assert result.constant == pytest.approx(9.0)

    def test_exponent_enters_the_factor(self, half_line):
        result = harnack_constant(half_line, half_line.subset([1, 2]), 0.0, 3)

        assert result.constant == pytest.approx(math.sqrt(2) + 1)

    def test_singleton(self, half_line):
        result = harnack_constant(half_line, half_line.subset([4]), 0.0, 2)

        assert result.constant == 1.0
        assert result.pair_bounds == [[1.0]]

    def test_f_lowers_the_constant(self, half_line):
        result = harnack_constant(half_line, half_line.subset([1, 2]), 1.0, 2)

        assert result.constant == pytest.approx(2.0)

    def test_pairs_omitted(self, half_line):
        assert harnack_constant(half_line, half_line.subset([1, 2]), 0.0, 2, with_pairs=False).pair_bounds is None

    def test_negative_d_f(self, half_line):
        with pytest.raises(HypothesisError):
            harnack_constant(half_line, half_line.subset([1, 2]), 5.0, 2)

    @pytest.mark.parametrize("labels", [[], [1, 3]])
    def test_k_must_be_connected_and_nonempty(self, half_line, labels):
        with pytest.raises(HypothesisError):
            harnack_constant(half_line, half_line.subset(labels), 0.0, 2)


class TestHarnackVerify:
    def test_hardy_function(self, half_line):
        result = harnack_verify(half_line, half_line.subset([1, 2]), 0.0, hardy_function(half_line, 2), 2)

        assert result.holds
        assert result.ratio == pytest.approx(math.sqrt(2))
        assert result.constant == pytest.approx(3.0)

    def test_zero_propagation(self, half_line):
        result = harnack_verify(half_line, half_line.subset([2, 3]), 0.0, np.zeros(half_line.vertex_count), 2)

        assert result.holds
        assert result.zero_propagation
        assert result.ratio is None

    def test_zero_inside_is_not_a_supersolution(self, half_line):
        u = hardy_function(half_line, 2)
        u[2] = 0.0

        with pytest.raises(HypothesisError):
            harnack_verify(half_line, half_line.subset([2, 3]), 0.0, u, 2)

    def test_negative_u(self, half_line):
        u = -np.ones(half_line.vertex_count)

        with pytest.raises(NonNegativityError):
            harnack_verify(half_line, half_line.subset([2, 3]), 0.0, u, 2)


class TestHarnackBattery:
    @pytest.mark.parametrize("seed", range(100))
    def test_pairwise_bounds_hold(self, seed):
        g, K, f, u, p = random_case(seed)

        result = harnack_constant(g, K, f, p)
        verification = harnack_verify(g, K, f, u, p)

        assert verification.holds
        assert verification.ratio <= result.constant * (1 + 1e-12)
        members = np.flatnonzero(K)
        bounds = np.asarray(result.pair_bounds)
        for i, s in enumerate(members):
            for j, t in enumerate(members):
                assert u[t] <= bounds[i, j] * u[s] * (1 + 1e-12)

    @pytest.mark.parametrize("seed", range(0, 100, 7))
    def test_zero_propagation(self, seed):
        g, K, _, u, p = random_case(seed)
        closure = K.copy()
        for x in np.flatnonzero(K):
            closure[g.neighbors(x)[0]] = True
        u[closure] = 0.0

        verification = harnack_verify(g, K, g.potential / g.measure, u, p)

        assert verification.holds
        assert verification.zero_propagation

    @pytest.mark.parametrize("seed", range(0, 100, 7))
    def test_isolated_zero_breaks_the_supersolution(self, seed):
        g, K, f, u, p = random_case(seed)
        u[np.flatnonzero(K)[0]] = 0.0

        with pytest.raises(HypothesisError):
            harnack_verify(g, K, f, u, p)


class TestStrictPositivity:
    def test_hardy_function_is_strictly_positive(self, half_line):
        report = strict_positivity_check(half_line, half_line.interior, hardy_function(half_line, 3), 3)

        assert report.strictly_positive
        assert report.min_value == pytest.approx(1.0)

    def test_zero_function_rejected(self, half_line):
        with pytest.raises(HypothesisError):
            strict_positivity_check(half_line, half_line.interior, np.zeros(half_line.vertex_count), 2)

    def test_not_superharmonic(self):
        g = nat_line(4)

        with pytest.raises(HypothesisError):
            strict_positivity_check(g, g.interior, [0.0, 0.0, 1.0, 0.0, 0.0], 2)
