import random

import pytest

from gcrsolver.graphs import complete_graph, cycle_graph, path_graph, petersen_graph
from gcrsolver.variants import Graph, VariantSpec, build_family


@pytest.fixture(scope="session")
def p3():
    return build_family(path_graph(3), VariantSpec("classic"))


@pytest.fixture(scope="session")
def k2():
    return build_family(complete_graph(2), VariantSpec("classic"))


@pytest.fixture(scope="session")
def c4():
    return build_family(cycle_graph(4), VariantSpec("classic"))


@pytest.fixture(scope="session")
def c5():
    return build_family(cycle_graph(5), VariantSpec("classic"))


@pytest.fixture(scope="session")
def p3_dist1():
    return build_family(path_graph(3), VariantSpec("distance_k", k=1))


@pytest.fixture(scope="session")
def p4_speed2():
    return build_family(path_graph(4), VariantSpec("speed2_pursuer"))


@pytest.fixture(scope="session")
def petersen():
    return petersen_graph()


def random_connected_graph(rng: random.Random, min_vertices=3, max_vertices=6) -> Graph:
    """Random spanning tree plus extra edges; always connected."""
    n = rng.randint(min_vertices, max_vertices)
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[rng.randrange(i)]
        edges.add((min(u, order[i]), max(u, order[i])))
    possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for u, v in possible:
        if rng.random() < 0.3:
            edges.add((u, v))
    return Graph(n, sorted(edges))
