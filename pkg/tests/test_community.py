import math

import pytest

from bibnet.community import (
    detect_communities,
    modularity,
    summarize_communities,
)
from bibnet.graph import density

import oracles
from conftest import make_graph, random_graph


class TestModularity:
    def test_two_triangles_component_partition(self, two_triangles):
        q = modularity(two_triangles, [0, 0, 0, 1, 1, 1])
        assert q == pytest.approx(0.5)

    def test_all_in_one_never_positive(self):
        for seed in range(15):
            g = random_graph(seed, max_n=15, weighted=True)
            if g.m == 0:
                continue
            assert modularity(g, [0] * g.n) <= 1e-12

    def test_matches_direct_oracle(self):
        for seed in range(20):
            g = random_graph(seed, max_n=15, weighted=True)
            assignment = [0] * g.n
            groups: dict[int, list[int]] = {}
            for i in range(g.n):
                assignment[i] = i % 3
                groups.setdefault(i % 3, []).append(i)
            got = modularity(g, assignment)
            want = oracles.modularity_direct(g, list(groups.values()))
            assert got == pytest.approx(want, abs=1e-12)

    def test_edgeless_zero(self):
        g = make_graph(4, [])
        assert modularity(g, [0, 1, 2, 3]) == 0.0

    def test_bad_assignment_length(self, two_triangles):
        with pytest.raises(ValueError):
            modularity(two_triangles, [0, 1])

    def test_resolution_scales_degree_term(self, two_triangles):
        q1 = modularity(two_triangles, [0, 0, 0, 1, 1, 1], resolution=1.0)
        q2 = modularity(two_triangles, [0, 0, 0, 1, 1, 1], resolution=2.0)
        assert q2 == pytest.approx(q1 - 2 * (6 / 12) ** 2)


class TestDetectCommunities:
    def test_two_triangles_exact(self, two_triangles):
        part = detect_communities(two_triangles, seed=42)
        assert part.community_count == 2
        assert part.assignment[0] == part.assignment[1] == part.assignment[2]
        assert part.assignment[3] == part.assignment[4] == part.assignment[5]
        assert part.modularity == pytest.approx(0.5, abs=1e-12)
        _, best_q = oracles.exhaustive_best_partition(two_triangles)
        assert part.modularity == pytest.approx(best_q, abs=1e-12)

    def test_single_edge_one_community(self):
        g = make_graph(2, [(0, 1)])
        part = detect_communities(g)
        assert part.community_count == 1
        _, best_q = oracles.exhaustive_best_partition(g)
        assert part.modularity == pytest.approx(best_q)
        assert best_q == 0.0

    def test_edgeless_graph_singletons(self):
        g = make_graph(4, [])
        part = detect_communities(g)
        assert part.community_count == 4
        assert part.modularity == 0.0
        assert part.assignment == (0, 1, 2, 3)

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            detect_communities(make_graph(0, []))

    def test_partition_validity(self):
        for seed in range(30):
            g = random_graph(seed, max_n=40, weighted=True)
            part = detect_communities(g, seed=seed)
            assert len(part.assignment) == g.n
            assert set(part.assignment) == set(range(part.community_count))
            assert -0.5 <= part.modularity <= 1.0

    def test_detected_q_at_least_all_in_one(self):
        for seed in range(20):
            g = random_graph(seed, max_n=25, weighted=True)
            if g.n == 0:
                continue
            part = detect_communities(g, seed=seed)
            assert part.modularity >= modularity(g, [0] * g.n) - 1e-12

    def test_pass_modularities_non_decreasing(self):
        for seed in range(30):
            g = random_graph(seed, max_n=40)
            part = detect_communities(g, seed=7)
            history = part.pass_modularities
            for earlier, later in zip(history, history[1:]):
                assert later >= earlier - 1e-12

    def test_deterministic_for_seed(self):
        for seed in (0, 1, 2):
            g = random_graph(seed + 100, max_n=40, weighted=True)
            a = detect_communities(g, seed=11)
            b = detect_communities(g, seed=11)
            assert a == b

    def test_matches_exhaustive_on_tiny_graphs(self):
        for seed in range(12):
            g = random_graph(seed + 40, max_n=7, weighted=True)
            if g.m == 0:
                continue
            part = detect_communities(g, seed=3)
            _, best_q = oracles.exhaustive_best_partition(g)
            # greedy may fall short of the global optimum but not by much,
            # and never exceeds it
            assert part.modularity <= best_q + 1e-12
            assert part.modularity >= best_q - 0.1

    def test_seed_echoed(self, two_triangles):
        part = detect_communities(two_triangles, seed=9, resolution=1.5)
        assert part.seed == 9
        assert part.resolution == 1.5
        assert part.algorithm == "louvain"


class TestSummaries:
    def test_table_style_row(self, two_triangles):
        part = detect_communities(two_triangles, seed=42)
        summaries = summarize_communities(two_triangles, part, k=5)
        assert len(summaries) == 2
        for s in summaries:
            assert s.size == 3
            assert s.internal_edges == 3
            assert s.density == pytest.approx(1.0)
            assert len(s.top_members) == 3

    def test_density_matches_formula(self):
        for seed in range(10):
            g = random_graph(seed, max_n=30)
            if g.n == 0:
                continue
            part = detect_communities(g, seed=5)
            for s in summarize_communities(g, part, k=3):
                assert s.density == pytest.approx(density(s.size, s.internal_edges))

    def test_sizes_partition_graph(self):
        g = random_graph(17, max_n=30)
        part = detect_communities(g, seed=5)
        summaries = summarize_communities(g, part, k=3)
        assert sum(s.size for s in summaries) == g.n
        assert sum(s.internal_edges for s in summaries) <= g.m

    def test_singleton_community(self):
        g = make_graph(3, [(0, 1)])
        part = detect_communities(g, seed=1)
        summaries = summarize_communities(g, part, k=2)
        singleton = [s for s in summaries if s.size == 1][0]
        assert singleton.internal_edges == 0
        assert singleton.density == 0.0

    def test_tie_broken_lexicographically(self):
        g = make_graph(["b", "a", "c"], [(0, 1), (0, 2), (1, 2)])
        part = detect_communities(g, seed=1)
        summaries = summarize_communities(g, part, k=3)
        assert summaries[0].top_members == ("a", "b", "c")

    def test_bad_k(self, two_triangles):
        part = detect_communities(two_triangles)
        with pytest.raises(ValueError):
            summarize_communities(two_triangles, part, k=0)

    def test_paper_density_rows(self):
        # Orange community of the country network and Pink institutions row
        assert math.isclose(density(32, 160), 0.323, abs_tol=0.0005)
        assert math.isclose(density(361, 981), 0.015, abs_tol=0.0005)
