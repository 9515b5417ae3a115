import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bibnet.graph import WeightedGraph


def make_graph(names_or_n, edges) -> WeightedGraph:
    """Graph from (u, v) or (u, v, w) index pairs; int -> auto names."""
    if isinstance(names_or_n, int):
        names = [f"n{i}" for i in range(names_or_n)]
    else:
        names = list(names_or_n)
    triples = [e if len(e) == 3 else (e[0], e[1], 1) for e in edges]
    return WeightedGraph.from_edges(names, triples)


def random_graph(seed: int, max_n: int = 50, weighted: bool = False) -> WeightedGraph:
    """Seeded random graph spanning sparse to dense regimes."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    regime = rng.choice(["sparse", "medium", "dense"])
    p = {"sparse": 1.5 / n, "medium": 4.0 / n, "dense": 0.5}[regime]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                w = rng.randint(1, 4) if weighted else 1
                edges.append((u, v, w))
    return make_graph(n, edges)


@pytest.fixture
def star4() -> WeightedGraph:
    return make_graph(["c", "a", "b", "d"], [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def two_triangles() -> WeightedGraph:
    return make_graph(
        list("abcdef"),
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
    )


@pytest.fixture
def path3() -> WeightedGraph:
    return make_graph(["a", "b", "c"], [(0, 1), (1, 2)])
