import numpy as np
import pytest

from pgraph.domain.model.graph import WeightedGraph
from pgraph.models import erdos_renyi, nat_line


@pytest.fixture
def triangle() -> WeightedGraph:
    """Three vertices, non-uniform weights and measure, vertex 2 on the boundary."""
    return WeightedGraph(
        3,
        [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 0.5)],
        measure=[1.0, 2.0, 1.0],
        potential=[0.0, 0.5, 0.0],
        interior=[0, 1],
    )


@pytest.fixture
def half_line() -> WeightedGraph:
    return nat_line(8)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240117)


@pytest.fixture(scope="session")
def random_graphs():
    """200 seeded weighted random graphs on 6 to 50 vertices with a signed potential and a nonempty boundary."""
    return [
        erdos_renyi(
            n=int(6 + seed % 45),
            edge_probability=0.3,
            seed=seed,
            potential_range=(-1.0, 1.0),
            interior_fraction=0.7,
        )
        for seed in range(200)
    ]
