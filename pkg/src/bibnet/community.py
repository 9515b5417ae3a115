"""Modularity-based community detection and per-community summaries.

The detector is a two-phase Louvain: seeded-shuffle local moves until no
strictly positive modularity gain remains, then aggregation of
communities into super-nodes, repeated until a full pass stops
improving.  Node visit order is the only randomized ingredient, so a
fixed (seed, resolution) pair always reproduces the same partition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import WeightedGraph, density, subgraph_by_indices

_MIN_GAIN = 1e-12


@dataclass(frozen=True)
class CommunityPartition:
    assignment: tuple[int, ...]
    community_count: int
    modularity: float
    seed: int
    resolution: float
    pass_modularities: tuple[float, ...]
    algorithm: str = "louvain"


@dataclass(frozen=True)
class CommunitySummary:
    community: int
    size: int
    internal_edges: int
    density: float
    top_members: tuple[str, ...]


def modularity(
    g: WeightedGraph, assignment, resolution: float = 1.0
) -> float:
    """Q = sum_c [e_c/m - resolution * (d_c/2m)^2] with weighted edges.

    e_c is the weighted internal edge count of community c, d_c the sum
    of weighted degrees, m the total edge weight.  Defined as 0 when the
    graph has no edges.
    """
    if len(assignment) != g.n:
        raise ValueError(
            f"assignment length {len(assignment)} != node count {g.n}"
        )
    m = g.total_weight()
    if m == 0:
        return 0.0
    internal: dict[int, float] = {}
    degree_sum: dict[int, float] = {}
    for u in range(g.n):
        cu = assignment[u]
        for v, w in g.neighbors(u):
            degree_sum[cu] = degree_sum.get(cu, 0.0) + w
            if assignment[v] == cu and u < v:
                internal[cu] = internal.get(cu, 0.0) + w
    q = 0.0
    for c, d_c in degree_sum.items():
        e_c = internal.get(c, 0.0)
        q += e_c / m - resolution * (d_c / (2 * m)) ** 2
    return q


class _LevelGraph:
    """Mutable weighted graph used between aggregation levels."""

    def __init__(self, adj: list[dict[int, float]], loops: list[float]):
        self.adj = adj
        self.loops = loops  # self-loop weight, counted once
        self.n = len(adj)
        self.k = [
            sum(nbrs.values()) + 2 * loops[i] for i, nbrs in enumerate(adj)
        ]
        self.m = (sum(self.k)) / 2.0

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> "_LevelGraph":
        adj: list[dict[int, float]] = [dict() for _ in range(g.n)]
        for u, v, w in g.edges():
            adj[u][v] = float(w)
            adj[v][u] = float(w)
        return cls(adj, [0.0] * g.n)


def _one_level(lg: _LevelGraph, rng: random.Random, resolution: float) -> list[int]:
    """Phase 1: local moves until a full sweep makes none."""
    comm = list(range(lg.n))
    comm_tot = lg.k[:]  # sum of degrees per community
    two_m = 2.0 * lg.m
    order = list(range(lg.n))
    rng.shuffle(order)

    improved = True
    while improved:
        improved = False
        for v in order:
            cv = comm[v]
            kv = lg.k[v]
            # weight from v to each adjacent community
            links: dict[int, float] = {}
            for u, w in lg.adj[v].items():
                links[comm[u]] = links.get(comm[u], 0.0) + w
            comm_tot[cv] -= kv
            base = links.get(cv, 0.0) - resolution * kv * comm_tot[cv] / two_m
            best_comm = cv
            best_gain = base
            for c, w_vc in links.items():
                if c == cv:
                    continue
                gain = w_vc - resolution * kv * comm_tot[c] / two_m
                # ties keep the current community
                if gain > best_gain + _MIN_GAIN:
                    best_gain = gain
                    best_comm = c
            comm_tot[best_comm] += kv
            if best_comm != cv:
                comm[v] = best_comm
                improved = True
    return comm


def _aggregate(lg: _LevelGraph, comm: list[int]) -> tuple[_LevelGraph, list[int]]:
    ids: dict[int, int] = {}
    mapping = []
    for v in range(lg.n):
        c = comm[v]
        if c not in ids:
            ids[c] = len(ids)
        mapping.append(ids[c])
    size = len(ids)
    adj: list[dict[int, float]] = [dict() for _ in range(size)]
    loops = [0.0] * size
    for v in range(lg.n):
        cv = mapping[v]
        loops[cv] += lg.loops[v]
        for u, w in lg.adj[v].items():
            cu = mapping[u]
            if cu == cv:
                if v < u:
                    loops[cv] += w
            else:
                adj[cv][cu] = adj[cv].get(cu, 0.0) + w
    return _LevelGraph(adj, loops), mapping


def detect_communities(
    g: WeightedGraph, seed: int = 42, resolution: float = 1.0
) -> CommunityPartition:
    """Louvain partition of the weighted graph.

    Deterministic for a fixed (seed, resolution); an edgeless graph gets
    singleton communities with Q = 0.
    """
    if g.n == 0:
        raise ValueError("cannot partition an empty graph")
    if g.m == 0:
        return CommunityPartition(
            assignment=tuple(range(g.n)),
            community_count=g.n,
            modularity=0.0,
            seed=seed,
            resolution=resolution,
            pass_modularities=(),
        )
    rng = random.Random(seed)
    lg = _LevelGraph.from_graph(g)
    node_to_comm = list(range(g.n))
    history: list[float] = []
    prev_q = modularity(g, node_to_comm, resolution)

    while True:
        n_before = lg.n
        comm = _one_level(lg, rng, resolution)
        lg, mapping = _aggregate(lg, comm)
        node_to_comm = [mapping[i] for i in node_to_comm]
        q = modularity(g, node_to_comm, resolution)
        assert q >= prev_q - 1e-9, "modularity decreased across a pass"
        history.append(q)
        if lg.n == n_before or lg.n == 1 or q - prev_q < _MIN_GAIN:
            break
        prev_q = q

    assignment = tuple(_contiguous(node_to_comm))
    return CommunityPartition(
        assignment=assignment,
        community_count=max(assignment) + 1,
        modularity=modularity(g, assignment, resolution),
        seed=seed,
        resolution=resolution,
        pass_modularities=tuple(history),
    )


def _contiguous(assignment: list[int]) -> list[int]:
    """Relabel community ids to 0..k-1 by first appearance."""
    ids: dict[int, int] = {}
    out = []
    for c in assignment:
        if c not in ids:
            ids[c] = len(ids)
        out.append(ids[c])
    return out


def summarize_communities(
    g: WeightedGraph, partition: CommunityPartition, k: int = 5
) -> list[CommunitySummary]:
    """Size, internal edges, induced density, and top-k members per
    community.  Members rank by whole-graph degree, ties broken by name.
    """
    if k < 1:
        raise ValueError(f"top-k must be >= 1, got {k}")
    members: list[list[int]] = [[] for _ in range(partition.community_count)]
    for node, c in enumerate(partition.assignment):
        members[c].append(node)
    out = []
    for c, nodes in enumerate(members):
        sub = subgraph_by_indices(g, nodes)
        ranked = sorted(nodes, key=lambda i: (-g.degree(i), g.names[i]))
        out.append(
            CommunitySummary(
                community=c,
                size=len(nodes),
                internal_edges=sub.m,
                density=density(len(nodes), sub.m),
                top_members=tuple(g.names[i] for i in ranked[:k]),
            )
        )
    return out
