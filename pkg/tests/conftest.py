import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_graph(rand: random.Random, n: int, percent: int):
    """Erdos-Renyi-style graph with integer edge density in percent."""
    from widthlab.graphs import Graph
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rand.randrange(100) < percent]
    return Graph.from_edges(n, edges)
