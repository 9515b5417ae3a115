"""Weighted undirected co-occurrence graphs built by clique expansion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .records import BiblioRecord, EntityKind, extract_entities


class WeightedGraph:
    """Undirected simple graph with positive integer edge weights.

    Nodes are entity names mapped to dense indices in first-appearance
    order; adjacency is CSR with neighbor lists sorted by index.  The
    structure is frozen after construction and safe to share across
    threads.
    """

    __slots__ = ("names", "_index", "indptr", "indices", "weights", "m")

    def __init__(
        self,
        names: Sequence[str],
        indptr: np.ndarray,
        indices: np.ndarray,
        weights: np.ndarray,
        m: int,
    ):
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError("duplicate node names")
        self.indptr = indptr
        self.indices = indices
        self.weights = weights
        self.m = m

    @classmethod
    def from_edges(
        cls,
        names: Sequence[str],
        edges: Iterable[tuple[int, int, int]],
    ) -> "WeightedGraph":
        """Build from (u, v, weight) index triples; duplicates accumulate."""
        n = len(names)
        acc: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside node range")
            if w < 1:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            acc[key] = acc.get(key, 0) + w
        return cls._from_edge_dict(names, acc)

    @classmethod
    def _from_edge_dict(
        cls, names: Sequence[str], acc: dict[tuple[int, int], int]
    ) -> "WeightedGraph":
        n = len(names)
        deg = np.zeros(n + 1, dtype=np.int64)
        for u, v in acc:
            deg[u + 1] += 1
            deg[v + 1] += 1
        indptr = np.cumsum(deg)
        nnz = int(indptr[-1])
        indices = np.empty(nnz, dtype=np.int32)
        weights = np.empty(nnz, dtype=np.int64)
        fill = indptr[:-1].copy()
        # filling in sorted (u, v) key order leaves every row's neighbor
        # slice sorted: a row first receives its smaller-indexed partners
        # (ascending), then its own block (also ascending)
        for (u, v), w in sorted(acc.items()):
            indices[fill[u]] = v
            weights[fill[u]] = w
            fill[u] += 1
            indices[fill[v]] = u
            weights[fill[v]] = w
            fill[v] += 1
        return cls(names, indptr, indices, weights, len(acc))

    @property
    def n(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def node_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown node {name!r}") from None

    def neighbors(self, i: int) -> Iterator[tuple[int, int]]:
        for k in range(self.indptr[i], self.indptr[i + 1]):
            yield int(self.indices[k]), int(self.weights[k])

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def strength(self, i: int) -> int:
        return int(self.weights[self.indptr[i] : self.indptr[i + 1]].sum())

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Each undirected edge once, as (u, v, w) with u < v."""
        for u in range(self.n):
            for k in range(self.indptr[u], self.indptr[u + 1]):
                v = int(self.indices[k])
                if u < v:
                    yield u, v, int(self.weights[k])

    def total_weight(self) -> int:
        return int(self.weights.sum()) // 2

    def edge_names(self) -> Iterator[tuple[str, str, int]]:
        for u, v, w in self.edges():
            yield self.names[u], self.names[v], w


def build_co_network(
    records: Iterable[BiblioRecord], kind: EntityKind
) -> WeightedGraph:
    """Clique-expand each record's entity set into the weighted network.

    Every unordered pair of distinct entities co-occurring in a record
    gains +1 edge weight; repeated collaborations accumulate.  Entities
    present in at least one record become nodes even when isolated.
    """
    index: dict[str, int] = {}
    names: list[str] = []
    acc: dict[tuple[int, int], int] = {}
    for record in records:
        entities = extract_entities(record, kind)
        ids = []
        for name in entities:
            i = index.get(name)
            if i is None:
                i = len(names)
                index[name] = i
                names.append(name)
            ids.append(i)
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                u, v = ids[a], ids[b]
                key = (u, v) if u < v else (v, u)
                acc[key] = acc.get(key, 0) + 1
    return WeightedGraph._from_edge_dict(names, acc)


def density(n: int, m: int) -> float:
    """Edges present over the n(n-1)/2 possible; 0 for n < 2."""
    if n < 2:
        return 0.0
    return m / (n * (n - 1) / 2)


def average_degree(n: int, m: int) -> float:
    return 2 * m / n if n > 0 else 0.0


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    average_degree: float
    density: float
    giant_component_size: int
    component_count: int


def connected_components(g: WeightedGraph) -> list[int]:
    """Per-node component label, 0-based in order of first appearance."""
    labels = [-1] * g.n
    next_label = 0
    stack: list[int] = []
    for start in range(g.n):
        if labels[start] != -1:
            continue
        labels[start] = next_label
        stack.append(start)
        while stack:
            u = stack.pop()
            for v, _ in g.neighbors(u):
                if labels[v] == -1:
                    labels[v] = next_label
                    stack.append(v)
        next_label += 1
    return labels


def graph_stats(g: WeightedGraph) -> GraphStats:
    labels = connected_components(g)
    count = max(labels) + 1 if labels else 0
    sizes = [0] * count
    for c in labels:
        sizes[c] += 1
    return GraphStats(
        n=g.n,
        m=g.m,
        average_degree=average_degree(g.n, g.m),
        density=density(g.n, g.m),
        giant_component_size=max(sizes) if sizes else 0,
        component_count=count,
    )


def induced_subgraph(g: WeightedGraph, node_set: Iterable[str]) -> WeightedGraph:
    """Subgraph on the named nodes and the edges internal to them.

    Node order follows the parent graph's index order.  Unknown names
    raise KeyError naming the offender.
    """
    ids = sorted(g.node_index(name) for name in node_set)
    return subgraph_by_indices(g, ids)


def subgraph_by_indices(g: WeightedGraph, ids: Sequence[int]) -> WeightedGraph:
    local = {old: new for new, old in enumerate(ids)}
    if len(local) != len(ids):
        raise ValueError("duplicate nodes in subgraph selection")
    names = [g.names[i] for i in ids]
    acc: dict[tuple[int, int], int] = {}
    for old_u in ids:
        u = local[old_u]
        for old_v, w in g.neighbors(old_u):
            v = local.get(old_v)
            if v is not None and u < v:
                acc[(u, v)] = w
    return WeightedGraph._from_edge_dict(names, acc)


def shortest_path_length(g: WeightedGraph, u: str, v: str) -> int | None:
    """Unweighted hop count between two nodes; None when unreachable."""
    src = g.node_index(u)
    dst = g.node_index(v)
    if src == dst:
        return 0
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt: list[int] = []
        for a in frontier:
            for b, _ in g.neighbors(a):
                if b not in dist:
                    dist[b] = dist[a] + 1
                    if b == dst:
                        return dist[b]
                    nxt.append(b)
        frontier = nxt
    return None
