import math

import numpy as np
import pytest

from pgraph.domain.model.graph import PExponent, WeightedGraph, require_exponent
from pgraph.exceptions import ExponentError, GraphValidationError, VertexOutOfRangeError
from pgraph.graph import as_subset, boundary, closure, degree, is_connected
from pgraph.models import grid2d, int_line, nat_line


class TestWeightedGraph:
    def test_edges_are_stored_once_in_order(self):
        g = WeightedGraph(4, [(2, 1, 1.0), (0, 3, 2.0), (1, 2, 1.0), (0, 1, 0.5)])

        assert g.edges() == [(0, 1, 0.5), (0, 3, 2.0), (1, 2, 1.0)]
        assert g.edge_count == 3

    def test_zero_weight_edges_are_dropped(self):
        g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 0.0)])

        assert g.edge_count == 1
        assert g.weight(1, 2) == 0.0

    def test_weight_is_symmetric(self, triangle):
        assert triangle.weight(1, 2) == triangle.weight(2, 1) == 2.0
        assert triangle.weight(0, 0) == 0.0

    def test_neighbors_ascending(self, triangle):
        ids, weights = triangle.neighbors(2)

        assert ids.tolist() == [0, 1]
        assert weights.tolist() == [0.5, 2.0]

    @pytest.mark.parametrize(
        "edges",
        [
            [(0, 0, 1.0)],
            [(0, 1, -1.0)],
            [(0, 1, math.inf)],
            [(0, 1, 1.0), (1, 0, 2.0)],
            [(0, 5, 1.0)],
        ],
    )
    def test_invalid_edges_rejected(self, edges):
        with pytest.raises(GraphValidationError):
            WeightedGraph(3, edges)

    def test_measure_must_be_positive(self):
        with pytest.raises(GraphValidationError) as error:
            WeightedGraph(2, [(0, 1, 1.0)], measure=[1.0, 0.0])
        assert error.value.record == (1, 0.0)

    def test_labels_must_be_unique(self):
        with pytest.raises(GraphValidationError):
            WeightedGraph(2, [(0, 1, 1.0)], labels=["a", "a"])

    def test_arrays_are_read_only(self, triangle):
        with pytest.raises(ValueError):
            triangle.measure[0] = 3.0

    def test_index_of_accepts_string_selectors(self):
        g = int_line(3)

        assert g.index_of(-3) == 0
        assert g.index_of("2") == 5
        with pytest.raises(VertexOutOfRangeError):
            g.index_of("7")

    def test_check_vertex(self, triangle):
        with pytest.raises(VertexOutOfRangeError):
            triangle.check_vertex(3)

    def test_replace_keeps_labels_and_interior(self):
        g = int_line(2)
        heavier = g.replace(edge_weights=[2.0] * g.edge_count)

        assert heavier.labels == g.labels
        assert heavier.interior.tolist() == g.interior.tolist()
        assert heavier.weight(0, 1) == 2.0

    def test_replace_rejects_misaligned_weights(self, triangle):
        with pytest.raises(GraphValidationError):
            triangle.replace(edge_weights=[1.0])


class TestExponent:
    def test_conjugate(self):
        assert PExponent(value=2).conjugate == 2
        assert PExponent(value=3).conjugate == pytest.approx(1.5)
        assert PExponent(value=1).conjugate == math.inf

    def test_require_exponent(self):
        assert require_exponent(1, strict=False) == 1.0
        assert require_exponent(PExponent(value=2.5)) == 2.5
        with pytest.raises(ExponentError):
            require_exponent(1)
        with pytest.raises(ExponentError):
            require_exponent(0.5, strict=False)
        with pytest.raises(ExponentError):
            require_exponent(1.5, at_least=2)


class TestGraphCore:
    def test_degree(self, triangle):
        assert degree(triangle, 1) == 3.0
        assert degree(nat_line(2), 1) == 2.0

    def test_boundary_of_half_line_interior(self):
        g = nat_line(4)

        assert np.flatnonzero(boundary(g, g.interior)).tolist() == [0, 4]
        assert closure(g, g.interior).all()

    def test_boundary_of_everything_is_empty(self, triangle):
        assert not boundary(triangle, np.ones(3, dtype=bool)).any()

    def test_is_connected(self):
        g = nat_line(4)

        assert is_connected(g, g.interior)
        assert not is_connected(g, g.subset([1, 3]))
        assert is_connected(g, np.zeros(5, dtype=bool))
        assert is_connected(g, g.subset([2]))

    def test_as_subset_checks_shape(self, triangle):
        with pytest.raises(GraphValidationError):
            as_subset(triangle, np.ones(4, dtype=bool))


class TestModelWindows:
    def test_nat_line(self):
        g = nat_line(2)

        assert g.vertex_count == 3
        assert g.edge_count == 2
        assert g.interior.tolist() == [False, True, False]

    def test_int_line(self):
        g = int_line(1)

        assert g.labels == (-1, 0, 1)
        assert [g.labels[x] for x in np.flatnonzero(g.interior)] == [0]

    def test_grid2d(self):
        g = grid2d(1)

        assert g.vertex_count == 9
        assert g.edge_count == 12
        assert [g.labels[x] for x in np.flatnonzero(g.interior)] == ["0,0"]
