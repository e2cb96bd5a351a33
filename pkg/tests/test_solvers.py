import pytest

from app.schemas import Determinism, EdgeOrder, FamilyTag, Parameter, SearchConfig
from app.modules.colouring import EdgeColouring, is_proper, is_rainbow_connected, verify
from app.modules.graph_core import Graph, diameter
from app.modules.solvers import (
    OracleLimitError,
    SolverError,
    brute_force_oracle,
    chromatic_index,
    decide_prc_at_k,
    decide_rc_at_k,
    edge_order,
    prc,
    rc,
    solve,
)
from tests.conftest import connected_atlas, family


def colouring_of(g, result):
    return EdgeColouring.from_certificate(g, result.certificate)


class TestChromaticIndex:
    @pytest.mark.parametrize("tag,params,expected", [
        (FamilyTag.COMPLETE, (4,), 3),
        (FamilyTag.COMPLETE, (5,), 5),
        (FamilyTag.COMPLETE, (6,), 5),
        (FamilyTag.CYCLE, (5,), 3),
        (FamilyTag.CYCLE, (6,), 2),
        (FamilyTag.PETERSEN, (), 4),
        (FamilyTag.COMPLETE_BIPARTITE, (3, 4), 4),
        (FamilyTag.F8, (), 3),
    ])
    def test_values(self, cfg, tag, params, expected):
        g = family(tag, *params)
        result = chromatic_index(g, cfg)
        assert result.exact
        assert result.value == expected
        c = colouring_of(g, result)
        assert is_proper(c).is_proper
        assert c.k == expected

    def test_edgeless_graph(self, cfg):
        with pytest.raises(SolverError, match="nonempty edge set"):
            chromatic_index(Graph(3), cfg)

    def test_class_two_records_both_decisions(self, cfg):
        result = chromatic_index(family(FamilyTag.COMPLETE, 3), cfg)
        assert [d.k for d in result.stats.decisions] == [2, 3]
        assert [d.feasible for d in result.stats.decisions] == [False, True]


class TestRainbowConnection:
    @pytest.mark.parametrize("tag,params,expected", [
        (FamilyTag.COMPLETE, (5,), 1),
        (FamilyTag.PATH, (5,), 4),
        (FamilyTag.CYCLE, (4,), 2),
        (FamilyTag.CYCLE, (7,), 4),
        (FamilyTag.WHEEL, (4,), 2),
        (FamilyTag.G_11, (), 4),
    ])
    def test_values(self, cfg, tag, params, expected):
        g = family(tag, *params)
        result = rc(g, cfg)
        assert result.exact
        assert result.value == expected
        assert is_rainbow_connected(colouring_of(g, result)).is_rainbow_connected

    def test_single_vertex(self, cfg):
        result = rc(Graph(1), cfg)
        assert result.value == 0
        assert result.exact

    def test_disconnected(self, cfg):
        with pytest.raises(SolverError, match="connected"):
            rc(Graph(4, [(0, 1), (2, 3)]), cfg)

    @pytest.mark.slow
    def test_f8(self, cfg):
        assert rc(family(FamilyTag.F8), cfg).value == 3


class TestProperRainbowConnection:
    @pytest.mark.parametrize("tag,params,expected", [
        (FamilyTag.COMPLETE, (2,), 1),
        (FamilyTag.COMPLETE, (3,), 3),
        (FamilyTag.COMPLETE, (4,), 3),
        (FamilyTag.COMPLETE, (5,), 5),
        (FamilyTag.PATH, (4,), 3),
        (FamilyTag.CYCLE, (4,), 2),
        (FamilyTag.CYCLE, (6,), 3),
        (FamilyTag.CYCLE, (7,), 4),
        (FamilyTag.WHEEL, (4,), 4),
        (FamilyTag.WHEEL, (6,), 6),
        (FamilyTag.COMPLETE_BIPARTITE, (4, 4), 4),
        (FamilyTag.COMPLETE, (6,), 5),
        (FamilyTag.COMPLETE_BIPARTITE, (1, 4), 4),
        (FamilyTag.COMPLETE_BIPARTITE, (2, 3), 3),
        (FamilyTag.COMPLETE_BIPARTITE, (3, 3), 3),
        (FamilyTag.CLIQUE_PRODUCT, (2, 2), 2),
        (FamilyTag.CLIQUE_PRODUCT, (2, 3), 3),
        (FamilyTag.Z2, (), 4),
        (FamilyTag.G_11, (), 5),
        (FamilyTag.F8, (), 4),
        (FamilyTag.PETERSEN, (), 4),
    ])
    def test_values(self, cfg, tag, params, expected):
        g = family(tag, *params)
        result = prc(g, cfg)
        assert result.exact
        assert result.value == expected
        report = verify(colouring_of(g, result))
        assert report.is_prc_certificate
        assert report.k == expected

    def test_cycle_grid(self, cfg):
        for n in range(4, 11):
            assert prc(family(FamilyTag.CYCLE, n), cfg).value == (n + 1) // 2

    @pytest.mark.slow
    def test_cycle_grid_to_twelve(self, cfg):
        for n in range(11, 13):
            assert prc(family(FamilyTag.CYCLE, n), cfg).value == (n + 1) // 2

    def test_rainbow_optimal_proper_colouring_settles_value(self, cfg):
        g = family(FamilyTag.COMPLETE, 4)
        result = prc(g, cfg)
        assert result.value == 3
        assert [d.k for d in result.stats.decisions] == [3]

    def test_reuses_given_chromatic_index(self, cfg):
        g = family(FamilyTag.CYCLE, 6)
        chi = chromatic_index(g, cfg)
        assert prc(g, cfg, chi=chi).value == prc(g, cfg).value

    def test_single_vertex(self, cfg):
        assert prc(Graph(1), cfg).value == 0

    def test_disconnected(self, cfg):
        with pytest.raises(SolverError, match="prc needs a connected graph"):
            prc(Graph(3, [(0, 1)]), cfg)

    def test_dispatch(self, cfg):
        g = family(FamilyTag.WHEEL, 4)
        assert solve(g, Parameter.CHI_PRIME, cfg).value == 4
        assert solve(g, Parameter.RC, cfg).value == 2
        assert solve(g, Parameter.PRC, cfg).value == 4


class TestDecisions:
    def test_monotone_in_k(self, cfg):
        g = family(FamilyTag.CYCLE, 6)
        feasible = [decide_prc_at_k(g, k, cfg).feasible for k in range(1, 7)]
        assert feasible == [False, False, True, True, True, True]

    def test_rc_decision_certificate(self, cfg):
        g = family(FamilyTag.CYCLE, 5)
        assert decide_rc_at_k(g, 2, cfg).feasible is False
        decision = decide_rc_at_k(g, 3, cfg)
        assert decision.feasible
        assert is_rainbow_connected(decision.colouring).is_rainbow_connected

    def test_edgeless_is_trivially_feasible(self, cfg):
        assert decide_prc_at_k(Graph(1), 0, cfg).feasible

    @pytest.mark.parametrize("k", [0, 2, 5])
    def test_edgeless_graph_on_several_vertices_is_infeasible(self, cfg, k):
        for decide in (decide_prc_at_k, decide_rc_at_k):
            decision = decide(Graph(3), k, cfg)
            assert decision.feasible is False
            assert decision.colouring is None

    @pytest.mark.slow
    def test_f_n_needs_more_than_chromatic_index(self, cfg):
        g = family(FamilyTag.F_N, 8)
        assert chromatic_index(g, cfg).value == 5
        assert decide_prc_at_k(g, 5, cfg).feasible is False


class TestSearchOptions:
    def test_edge_orders(self):
        g = family(FamilyTag.PATH, 4)
        assert edge_order(g, EdgeOrder.CANONICAL) == [0, 1, 2]
        # middle edge has the largest degree sum, ties fall back to index
        assert edge_order(g) == [1, 0, 2]

    @pytest.mark.parametrize("overrides", [
        {"edge_order": EdgeOrder.CANONICAL},
        {"symmetry_breaking": False},
        {"rainbow_pruning": True},
    ])
    def test_options_do_not_change_values(self, overrides):
        cfg = SearchConfig(node_budget=10_000_000, time_budget=120.0, **overrides)
        assert prc(family(FamilyTag.G_11), cfg).value == 5
        assert rc(family(FamilyTag.CYCLE, 7), cfg).value == 4

    def test_sequential_runs_are_identical(self, cfg):
        g = family(FamilyTag.PETERSEN)
        first, second = prc(g, cfg), prc(g, cfg)
        assert first.certificate == second.certificate
        assert first.stats.decisions == second.stats.decisions

    def test_parallel_values_match(self):
        cfg = SearchConfig(
            node_budget=10_000_000,
            time_budget=120.0,
            determinism=Determinism.PARALLEL,
            workers=2,
        )
        for tag, params, expected in [
            (FamilyTag.CYCLE, (6,), 3),
            (FamilyTag.Z2, (), 4),
            (FamilyTag.F8, (), 4),
        ]:
            g = family(tag, *params)
            result = prc(g, cfg)
            assert result.value == expected
            assert verify(colouring_of(g, result)).is_prc_certificate


class TestBudgets:
    def test_exhausted_budget_brackets(self):
        cfg = SearchConfig(node_budget=5, time_budget=120.0)
        result = rc(family(FamilyTag.CYCLE, 9), cfg)
        assert not result.exact
        assert result.stats.lower_bound == 4
        assert result.value == result.stats.upper_bound == 8
        assert result.stats.decisions[-1].feasible is None
        assert is_rainbow_connected(colouring_of(family(FamilyTag.CYCLE, 9), result)).is_rainbow_connected

    def test_colour_cap_stops_the_scan(self):
        cfg = SearchConfig(node_budget=10_000_000, time_budget=120.0, colour_cap=3)
        result = rc(family(FamilyTag.CYCLE, 9), cfg)
        assert not result.exact
        assert result.stats.lower_bound == 4


class TestOracle:
    def test_oracle_limit(self):
        with pytest.raises(OracleLimitError, match="oracle limit exceeded"):
            brute_force_oracle(family(FamilyTag.COMPLETE, 5), Parameter.PRC, 5, cap=1000)

    def test_small_cases(self):
        k3 = family(FamilyTag.COMPLETE, 3)
        assert brute_force_oracle(k3, Parameter.RC, 1)
        assert not brute_force_oracle(k3, Parameter.PRC, 2)
        assert brute_force_oracle(k3, Parameter.PRC, 3)
        assert brute_force_oracle(Graph(1), Parameter.PRC, 0)

    @staticmethod
    def _agree(graphs, cfg):
        for g in graphs:
            for parameter in Parameter:
                value = solve(g, parameter, cfg).value
                assert brute_force_oracle(g, parameter, value), (g.edges, parameter)
                assert not brute_force_oracle(g, parameter, value - 1), (g.edges, parameter)

    def test_agrees_up_to_four_vertices(self, cfg):
        self._agree(connected_atlas(4), cfg)

    @pytest.mark.slow
    def test_agrees_on_five_vertices(self, cfg):
        self._agree(connected_atlas(5, min_n=5), cfg)


class TestGadgets:
    @pytest.mark.parametrize("tag,params,chi,rc_value,prc_value", [
        (FamilyTag.PATH, (4,), 2, 3, 3),
        (FamilyTag.Z2, (), 3, 3, 4),
        (FamilyTag.G6_1, (), 3, 3, 3),
        (FamilyTag.G6_2, (), 4, 3, 4),
        (FamilyTag.G6_3, (), 3, 3, 4),
        (FamilyTag.G_11, (), 3, 4, 5),
    ])
    def test_values(self, cfg, tag, params, chi, rc_value, prc_value):
        g = family(tag, *params)
        assert chromatic_index(g, cfg).value == chi
        assert rc(g, cfg).value == rc_value
        assert prc(g, cfg).value == prc_value

    def test_f_six(self, cfg):
        g = family(FamilyTag.F_N, 6)
        assert chromatic_index(g, cfg).value == 3
        assert prc(g, cfg).value == 4
        assert rc(g, cfg).value == diameter(g)


class TestMonotoneDecisions:
    def test_feasibility_is_monotone_in_k(self, rng, cfg):
        graphs = connected_atlas(5, min_n=3)
        for _ in range(40):
            g = rng.choice(graphs)
            top = g.m + 1
            prc_row = [decide_prc_at_k(g, k, cfg).feasible for k in range(1, top)]
            rc_row = [decide_rc_at_k(g, k, cfg).feasible for k in range(1, top)]
            for row in (prc_row, rc_row):
                first = row.index(True)
                assert all(row[first:]), g.edges
