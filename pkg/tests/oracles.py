"""Independent reference implementations used to check the fast paths.

Everything here is deliberately written against the definitions rather
than sharing code with the package: Floyd-Warshall distances, explicit
shortest-path enumeration, dense eigensolver, scalar loop TOPSIS, and
exhaustive set-partition search for modularity.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np

from bibnet.graph import WeightedGraph

INF = math.inf


def floyd_warshall(g: WeightedGraph) -> np.ndarray:
    n = g.n
    dist = np.full((n, n), INF)
    np.fill_diagonal(dist, 0.0)
    for u in range(n):
        for v, _ in g.neighbors(u):
            dist[u, v] = 1.0
    for k in range(n):
        dist = np.minimum(dist, dist[:, k : k + 1] + dist[k : k + 1, :])
    return dist


def closeness_oracle(g: WeightedGraph, mode: str = "component") -> np.ndarray:
    dist = floyd_warshall(g)
    out = np.zeros(g.n)
    for j in range(g.n):
        reachable = np.isfinite(dist[j])
        if mode == "component":
            total = dist[j][reachable].sum()
            size = int(reachable.sum())
            out[j] = (size - 1) / total if total > 0 else 0.0
        else:
            mask = reachable.copy()
            mask[j] = False
            if g.n > 1:
                out[j] = (1.0 / dist[j][mask]).sum() / (g.n - 1)
    return out


def _sigma_from(g: WeightedGraph, s: int, dist: np.ndarray) -> np.ndarray:
    """Shortest-path counts from s, filled in order of distance."""
    n = g.n
    sigma = np.zeros(n)
    sigma[s] = 1.0
    finite = [v for v in range(n) if np.isfinite(dist[s, v])]
    for w in sorted(finite, key=lambda v: dist[s, v]):
        if w == s:
            continue
        total = 0.0
        for v, _ in g.neighbors(w):
            if dist[s, v] == dist[s, w] - 1:
                total += sigma[v]
        sigma[w] = total
    return sigma


def betweenness_pairs_oracle(g: WeightedGraph) -> np.ndarray:
    """Raw betweenness by the sigma-product identity over all pairs:
    sigma_st(v) = sigma_sv * sigma_vt when d(s,v) + d(v,t) = d(s,t)."""
    n = g.n
    dist = floyd_warshall(g)
    sigma = np.vstack([_sigma_from(g, s, dist) for s in range(n)])
    raw = np.zeros(n)
    for s in range(n):
        for t in range(s + 1, n):
            if not np.isfinite(dist[s, t]) or sigma[s, t] == 0:
                continue
            for v in range(n):
                if v == s or v == t:
                    continue
                if dist[s, v] + dist[v, t] == dist[s, t]:
                    raw[v] += sigma[s, v] * sigma[v, t] / sigma[s, t]
    return raw


def _all_shortest_paths(g: WeightedGraph, s: int, t: int, dist) -> list[list[int]]:
    if not np.isfinite(dist[s, t]):
        return []
    paths = []

    def backtrack(node: int, suffix: list[int]) -> None:
        if node == s:
            paths.append([s] + suffix)
            return
        for v, _ in g.neighbors(node):
            if dist[s, v] == dist[s, node] - 1:
                backtrack(v, [node] + suffix)

    backtrack(t, [])
    return paths


def betweenness_enum_oracle(g: WeightedGraph) -> np.ndarray:
    """Raw betweenness by literally enumerating every shortest path."""
    n = g.n
    dist = floyd_warshall(g)
    raw = np.zeros(n)
    for s in range(n):
        for t in range(s + 1, n):
            paths = _all_shortest_paths(g, s, t, dist)
            if not paths:
                continue
            interior = Counter(v for p in paths for v in p[1:-1])
            for v, count in interior.items():
                raw[v] += count / len(paths)
    return raw


def eigenvector_oracle(g: WeightedGraph, weighted: bool = False) -> np.ndarray:
    """Per-component principal eigenvector via dense eigh, max scaled to 1."""
    out = np.zeros(g.n)
    seen = set()
    for start in range(g.n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        q = [start]
        while q:
            u = q.pop()
            for v, _ in g.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    q.append(v)
        if len(comp) < 2:
            continue
        comp.sort()
        local = {node: i for i, node in enumerate(comp)}
        a = np.zeros((len(comp), len(comp)))
        for node in comp:
            for v, w in g.neighbors(node):
                a[local[node], local[v]] = w if weighted else 1.0
        eigvals, eigvecs = np.linalg.eigh(a)
        vec = eigvecs[:, np.argmax(eigvals)]
        if vec.sum() < 0:
            vec = -vec
        vec = np.abs(vec)
        vec /= vec.max()
        for node in comp:
            out[node] = vec[local[node]]
    return out


def clustering_oracle(g: WeightedGraph) -> np.ndarray:
    """Local clustering by checking every neighbor pair for an edge."""
    adjacency = [
        set(v for v, _ in g.neighbors(u)) for u in range(g.n)
    ]
    out = np.zeros(g.n)
    for v in range(g.n):
        nbrs = sorted(adjacency[v])
        if len(nbrs) < 2:
            continue
        closed = sum(
            1
            for a, b in itertools.combinations(nbrs, 2)
            if b in adjacency[a]
        )
        out[v] = closed / (len(nbrs) * (len(nbrs) - 1) / 2)
    return out


def topsis_oracle(values, weights, directions):
    """Scalar, loop-by-loop evaluation of the ranking pipeline steps.

    Returns dict with l, t, t_plus, t_minus, s_plus, s_minus, c.
    """
    p = len(values)
    q = len(values[0])
    l = [[0.0] * q for _ in range(p)]
    for j in range(q):
        norm = math.sqrt(sum(values[i][j] ** 2 for i in range(p)))
        for i in range(p):
            l[i][j] = values[i][j] / norm if norm > 0 else 0.0
    t = [[weights[j] * l[i][j] for j in range(q)] for i in range(p)]
    t_plus = []
    t_minus = []
    for j in range(q):
        column = [t[i][j] for i in range(p)]
        if directions[j] == "benefit":
            t_plus.append(max(column))
            t_minus.append(min(column))
        else:
            t_plus.append(min(column))
            t_minus.append(max(column))
    s_plus = [
        math.sqrt(sum((t[i][j] - t_plus[j]) ** 2 for j in range(q)))
        for i in range(p)
    ]
    s_minus = [
        math.sqrt(sum((t[i][j] - t_minus[j]) ** 2 for j in range(q)))
        for i in range(p)
    ]
    c = []
    for i in range(p):
        denom = s_plus[i] + s_minus[i]
        c.append(s_minus[i] / denom if denom > 0 else 0.5)
    return {
        "l": l,
        "t": t,
        "t_plus": t_plus,
        "t_minus": t_minus,
        "s_plus": s_plus,
        "s_minus": s_minus,
        "c": c,
    }


def set_partitions(items: list[int]):
    """All partitions of a small item list (Bell-number many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1 :]
        yield [[first]] + partition


def modularity_direct(g: WeightedGraph, blocks: list[list[int]], resolution=1.0) -> float:
    """Q from the definition: internal weight share minus the squared
    degree share, per block."""
    m = sum(w for _, _, w in g.edges())
    if m == 0:
        return 0.0
    strength = [0.0] * g.n
    for u, v, w in g.edges():
        strength[u] += w
        strength[v] += w
    q = 0.0
    for block in blocks:
        members = set(block)
        e_c = sum(w for u, v, w in g.edges() if u in members and v in members)
        d_c = sum(strength[i] for i in block)
        q += e_c / m - resolution * (d_c / (2 * m)) ** 2
    return q


def exhaustive_best_partition(g: WeightedGraph, resolution=1.0):
    """Maximum-modularity partition by trying every one (n <= ~8)."""
    best_q = -INF
    best = None
    for partition in set_partitions(list(range(g.n))):
        q = modularity_direct(g, partition, resolution)
        if q > best_q:
            best_q = q
            best = partition
    return best, best_q
