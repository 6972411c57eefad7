"""Defect digraph construction and the graph solver."""

import random

import pytest

from diobasis.completion import completion_solve_weights
from diobasis.core import (
    Equation,
    ResourceLimitError,
    WeightVector,
    build_weights,
    oracle_basis,
)
from diobasis.graph import (
    GraphStats,
    build_defect_graph,
    graph_solve,
    graph_solve_weights,
    render_adjacency,
)

EQ6 = Equation((104, 167), (165, 154, 148, 159, 174, 150))


def random_weights(rng, max_coeff, max_n):
    n = rng.randint(2, max_n)
    w = [rng.choice([-1, 1]) * rng.randint(1, max_coeff) for _ in range(n)]
    w[0] = abs(w[0])
    w[-1] = -abs(w[-1])
    return WeightVector(tuple(w))


class TestBuildDefectGraph:
    def test_small_graph_edges(self):
        g = build_defect_graph(WeightVector((1, -2)))
        assert (g.node_lo, g.node_hi, g.num_nodes) == (-2, 1, 4)
        assert set(g.edges()) == {
            (-2, 0, -1),
            (-1, 0, 0),
            (0, 0, 1),
            (0, 1, -2),
            (1, 1, -1),
        }

    def test_balanced_pair_counts(self):
        g = build_defect_graph(WeightVector((1, -1)))
        assert g.num_nodes == 3
        assert g.edge_count == 4

    def test_application_equation_node_count(self):
        g = build_defect_graph(build_weights(EQ6))
        assert g.num_nodes == 174 + 167 + 1 == 342

    def test_counts_match_closed_forms(self):
        rng = random.Random(13)
        for _ in range(30):
            w = random_weights(rng, 9, 6)
            g = build_defect_graph(w)
            nodes = w.max_a + w.max_b + 1
            assert g.num_nodes == nodes
            assert g.edge_count == sum(nodes - abs(wi) for wi in w.w)

    def test_every_edge_adds_its_weight(self):
        g = build_defect_graph(WeightVector((2, 3, -4)))
        for d, label, target in g.edges():
            assert target == d + g.w.w[label]
            assert g.node_lo <= target <= g.node_hi

    def test_render_format(self):
        text = render_adjacency(build_defect_graph(WeightVector((1, -2))))
        assert text.splitlines() == [
            "-2: (1->-1)",
            "-1: (1->0)",
            "0: (1->1) (2->-2)",
            "1: (2->-1)",
        ]


class TestGraphSolve:
    def test_one_equals_two(self):
        eq = Equation((1,), (2,))
        assert graph_solve(eq) == oracle_basis(eq) == [(2, 1)]

    def test_three_unknowns(self):
        eq = Equation((2, 1), (1,))
        assert graph_solve(eq) == [(0, 1, 1), (1, 0, 2)]

    def test_equals_completion_everywhere(self):
        # Same search over precomputed adjacency: bases must be set-equal.
        rng = random.Random(31)
        for _ in range(60):
            w = random_weights(rng, 13, 6)
            assert graph_solve_weights(w) == completion_solve_weights(w), w.w

    def test_matches_oracle(self):
        rng = random.Random(32)
        for _ in range(60):
            lhs = tuple(rng.randint(1, 7) for _ in range(rng.randint(1, 3)))
            rhs = tuple(rng.randint(1, 7) for _ in range(rng.randint(1, 3)))
            eq = Equation(lhs, rhs)
            assert graph_solve(eq) == oracle_basis(eq), eq.text()

    def test_search_is_clean(self):
        # No duplicate walks, no duplicate or dominated emissions.
        rng = random.Random(33)
        for _ in range(40):
            w = random_weights(rng, 11, 5)
            stats = GraphStats()
            graph_solve_weights(w, stats=stats)
            assert stats.duplicate_walks == 0
            assert stats.duplicate_emissions == 0
            assert stats.insert.rejected == 0

    def test_frontier_cap(self):
        with pytest.raises(ResourceLimitError):
            graph_solve(Equation((104, 167), (165, 154, 148)), frontier_cap=4)

    def test_single_signed_weights(self):
        assert graph_solve_weights(WeightVector((2, 3))) == []
