import pickle
from fractions import Fraction

import networkx as nx
import pytest

from app.schemas import FamilyTag
from app.modules.graph_core import (
    ExactLimitError,
    Graph,
    GraphError,
    bridges,
    cartesian_product,
    clique_number,
    diameter,
    girth,
    is_connected,
    is_overfull,
    is_tree,
    maximum_clique,
    metrics,
)
from tests.conftest import connected_atlas, family


class TestGraph:
    def test_edges_are_canonical(self):
        g = Graph(4, [(3, 1), (0, 2), (1, 0), (2, 0)])
        assert g.edges == ((0, 1), (0, 2), (1, 3))
        assert g.m == 3
        assert g.adjacency[0] == (1, 2)
        assert g.adjacency[1] == (0, 3)

    def test_edge_index_follows_canonical_order(self):
        g = Graph(4, [(2, 3), (0, 1), (1, 2)])
        assert g.edge_index(3, 2) == 2
        assert g.edge_index(0, 1) == 0
        with pytest.raises(GraphError):
            g.edge_index(0, 3)

    def test_incident_pairs_sorted_by_neighbour(self):
        g = Graph(4, [(0, 3), (0, 1), (0, 2)])
        assert g.incident(0) == ((1, 0), (2, 1), (3, 2))

    def test_self_loop_rejected(self):
        with pytest.raises(GraphError, match="self-loop"):
            Graph(3, [(1, 1)])

    def test_vertex_out_of_range_rejected(self):
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])

    def test_immutable(self):
        g = Graph(2, [(0, 1)])
        with pytest.raises(AttributeError):
            g.n = 5

    def test_pickles_for_worker_processes(self):
        g = family(FamilyTag.PETERSEN)
        clone = pickle.loads(pickle.dumps(g))
        assert clone == g
        assert hash(clone) == hash(g)
        assert clone.incident(0) == g.incident(0)

    def test_networkx_round_trip(self):
        nxg = nx.petersen_graph()
        g = Graph.from_networkx(nxg)
        assert nx.utils.edges_equal(g.to_networkx().edges(), nxg.edges())


class TestCartesianProduct:
    def test_k2_k2_is_c4(self):
        p = cartesian_product(family(FamilyTag.COMPLETE, 2), family(FamilyTag.COMPLETE, 2))
        assert (p.n, p.m) == (4, 4)
        assert set(p.degrees()) == {2}
        assert nx.is_isomorphic(p.to_networkx(), nx.cycle_graph(4))

    def test_k2_k3_is_prism(self):
        p = cartesian_product(family(FamilyTag.COMPLETE, 2), family(FamilyTag.COMPLETE, 3))
        assert (p.n, p.m) == (6, 9)
        assert set(p.degrees()) == {3}
        assert nx.is_isomorphic(p.to_networkx(), nx.circular_ladder_graph(3))

    def test_identity_factor(self):
        k2 = family(FamilyTag.COMPLETE, 2)
        assert cartesian_product(k2, Graph(1)) == k2

    def test_degree_additivity(self):
        g = family(FamilyTag.WHEEL, 4)
        h = family(FamilyTag.PATH, 3)
        p = cartesian_product(g, h)
        for a in range(g.n):
            for b in range(h.n):
                assert p.degree(a * h.n + b) == g.degree(a) + h.degree(b)

    def test_matches_networkx_product(self):
        g = family(FamilyTag.COMPLETE, 3)
        h = family(FamilyTag.CYCLE, 4)
        ours = cartesian_product(g, h).to_networkx()
        theirs = nx.cartesian_product(g.to_networkx(), h.to_networkx())
        assert nx.is_isomorphic(ours, theirs)

    def test_empty_factor_rejected(self):
        with pytest.raises(GraphError):
            cartesian_product(Graph(0), Graph(2, [(0, 1)]))


class TestMetrics:
    def test_complete_five(self):
        mt = metrics(family(FamilyTag.COMPLETE, 5))
        assert (mt.max_degree, mt.min_degree, mt.diameter, mt.clique_number) == (4, 4, 1, 5)
        assert mt.average_degree == Fraction(4)

    def test_wheel_four(self):
        mt = metrics(family(FamilyTag.WHEEL, 4))
        assert mt.n == 5
        assert mt.max_degree == 4
        assert mt.diameter == 2

    def test_f8_min_degree(self):
        mt = metrics(family(FamilyTag.F8))
        assert mt.n == 8
        assert mt.min_degree == 3
        assert mt.diameter == 3

    def test_degree_order(self):
        for g in connected_atlas(5):
            mt = metrics(g)
            assert mt.min_degree <= mt.average_degree <= mt.max_degree

    def test_disconnected(self):
        mt = metrics(Graph(4, [(0, 1), (2, 3)]))
        assert mt.diameter is None
        assert not mt.is_connected

    def test_overfull(self):
        assert is_overfull(family(FamilyTag.COMPLETE, 3))
        assert metrics(family(FamilyTag.COMPLETE_MULTIPARTITE, 1, 1, 1)).is_overfull
        assert not metrics(family(FamilyTag.COMPLETE_MULTIPARTITE, 1, 1, 2)).is_overfull

    def test_bipartite(self):
        assert metrics(family(FamilyTag.COMPLETE_BIPARTITE, 2, 3)).is_bipartite
        assert not metrics(family(FamilyTag.CYCLE, 5)).is_bipartite

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            metrics(Graph(0))

    def test_without_clique(self):
        assert metrics(family(FamilyTag.COMPLETE, 4), include_clique=False).clique_number is None


class TestCliques:
    def test_matches_networkx(self):
        for g in connected_atlas(6):
            expected = max(len(c) for c in nx.find_cliques(g.to_networkx()))
            assert clique_number(g) == expected

    def test_maximum_clique_is_a_clique(self):
        g = cartesian_product(family(FamilyTag.COMPLETE, 4), family(FamilyTag.COMPLETE, 2))
        clique = maximum_clique(g)
        assert len(clique) == 4
        assert all(g.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1:])

    def test_exact_limit(self):
        with pytest.raises(ExactLimitError, match="exact limit exceeded"):
            maximum_clique(family(FamilyTag.COMPLETE, 5), limit=3)


class TestStructure:
    def test_girth(self):
        assert girth(family(FamilyTag.CYCLE, 5)) == 5
        assert girth(family(FamilyTag.PETERSEN)) == 5
        assert girth(family(FamilyTag.WHEEL, 6)) == 3
        assert girth(family(FamilyTag.PATH, 4)) is None

    def test_girth_matches_networkx(self):
        for g in connected_atlas(6):
            expected = nx.girth(g.to_networkx())
            assert girth(g) == (None if expected == float("inf") else expected)

    def test_bridges(self):
        assert bridges(family(FamilyTag.PATH, 4)) == [(0, 1), (1, 2), (2, 3)]
        assert bridges(family(FamilyTag.Z2)) == [(0, 3), (3, 4)]
        assert bridges(family(FamilyTag.CYCLE, 5)) == []

    def test_diameter_and_trees(self):
        assert diameter(family(FamilyTag.PATH, 6)) == 5
        assert is_tree(family(FamilyTag.PATH, 6))
        assert not is_tree(family(FamilyTag.CYCLE, 6))
        assert is_connected(Graph(1))
