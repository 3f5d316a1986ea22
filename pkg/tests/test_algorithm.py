import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pyrsistent import pmap, pset

from sccheck.algorithm import (
    MinOrder,
    SeededOrder,
    dfs,
    dfs1,
    fuel_bound,
    parse_order,
    tarjan,
    tarjan_fueled,
)
from sccheck.environment import INFINITY, Env, serial
from sccheck.errors import GraphFormatError
from sccheck.graph import Graph
from sccheck.oracle import scc_oracle
from sccheck.partition import SccPartition

from .strategies import graphs


class TestDfs1:
    def test_isolated_vertex(self):
        g = Graph.from_edges(1, [])
        value, e = dfs1(g, 0, Env())
        assert value == INFINITY
        assert e.black == pset([0])
        assert e.gray == pset()
        assert e.stack_list() == []
        assert e.sccs == pset([frozenset({0})])
        assert e.sn == 1
        assert e.num == pmap({0: INFINITY})

    def test_self_loop_behaves_like_isolated(self):
        g = Graph.from_edges(1, [(0, 0)])
        value, e = dfs1(g, 0, Env())
        assert value == INFINITY
        assert e.sccs == pset([frozenset({0})])

    def test_two_cycle(self):
        g = Graph.from_edges(2, [(0, 1), (1, 0)])
        value, e = dfs1(g, 0, Env())
        assert value == INFINITY
        assert e.black == pset([0, 1])
        assert e.gray == pset()
        assert e.sccs == pset([frozenset({0, 1})])
        assert e.sn == 2
        assert e.num == pmap({0: INFINITY, 1: INFINITY})

    def test_inner_vertex_reports_its_lowlink(self):
        g = Graph.from_edges(2, [(0, 1), (1, 0)])
        start = Env(gray=pset([0]), stack=Env().stack.cons(0), sn=1, num=pmap({0: serial(0)}))
        value, e = dfs1(g, 1, start)
        assert value == serial(0)
        assert e.black == pset([1])
        assert e.gray == pset([0])
        assert e.stack_list() == [1, 0]
        assert e.sccs == pset()


class TestDfs:
    def test_empty_roots_return_infinity(self):
        g = Graph.from_edges(2, [(0, 1)])
        assert dfs(g, [], Env()) == (INFINITY, Env())

    def test_visited_root_contributes_its_number(self):
        g = Graph.from_edges(1, [])
        e = Env(gray=pset([0]), stack=Env().stack.cons(0), sn=1, num=pmap({0: serial(0)}))
        assert dfs(g, {0}, e) == (serial(0), e)

    def test_duplicate_roots_are_one_root(self):
        g = Graph.from_edges(2, [(0, 1)])
        assert dfs(g, [1, 1, 0], Env()) == dfs(g, {0, 1}, Env())

    def test_visits_every_root(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        value, e = dfs(g, [2], Env())
        assert value == INFINITY
        assert e.sccs == pset([frozenset({2})])
        value, e = dfs(g, [0], e)
        assert e.black == pset([0, 1, 2])
        assert len(e.sccs) == 3


class TestTarjan:
    @pytest.mark.parametrize(
        "vertex_count,edges,expected",
        [
            (0, [], []),
            (3, [(0, 1), (1, 2)], [[0], [1], [2]]),
            (3, [(0, 1), (1, 0), (1, 2)], [[0, 1], [2]]),
            (3, [(0, 1), (1, 2), (2, 0)], [[0, 1, 2]]),
            (5, [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2), (1, 2)], [[0, 1], [2, 3, 4]]),
            (4, [(3, 3), (2, 1)], [[0], [1], [2], [3]]),
        ],
    )
    def test_examples(self, vertex_count, edges, expected):
        assert tarjan(Graph.from_edges(vertex_count, edges)) == SccPartition(expected)

    def test_deep_chain_does_not_overflow(self):
        n = 10_000
        g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        assert tarjan(g) == SccPartition([v] for v in range(n))

    def test_deep_cycle(self):
        n = 10_000
        g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
        assert tarjan(g) == SccPartition([range(n)])

    @settings(max_examples=150, deadline=None)
    @given(graphs())
    def test_matches_oracle(self, g):
        assert tarjan(g) == scc_oracle(g)

    @settings(max_examples=60, deadline=None)
    @given(graphs(), st.integers(min_value=0, max_value=2**32))
    def test_choice_order_does_not_matter(self, g, seed):
        assert tarjan(g, SeededOrder(seed)) == tarjan(g, MinOrder())


class TestFuel:
    def test_bound(self):
        assert fuel_bound(Graph.from_edges(10, [])) == 120
        assert fuel_bound(Graph.from_edges(0, [])) == 0

    def test_zero_fuel_on_empty_graph(self):
        assert tarjan_fueled(Graph.from_edges(0, []), 0) == SccPartition([])

    def test_zero_fuel_runs_out(self):
        assert tarjan_fueled(Graph.from_edges(1, []), 0) is None

    def test_too_little_fuel_on_two_cycle(self):
        g = Graph.from_edges(2, [(0, 1), (1, 0)])
        assert tarjan_fueled(g, 1) is None

    @settings(max_examples=100, deadline=None)
    @given(graphs())
    def test_bound_is_enough(self, g):
        assert tarjan_fueled(g, fuel_bound(g)) == tarjan(g)


class TestChoiceOrders:
    def test_min_order(self):
        assert MinOrder().arrange({3, 1, 2}) == (1, 2, 3)
        assert MinOrder().choose([5, 4]) == 4

    def test_seeded_order_is_a_permutation(self):
        order = SeededOrder(7)
        assert sorted(order.arrange(range(20))) == list(range(20))
        assert order.arrange(range(20)) == SeededOrder(7).arrange(range(20))

    def test_parse(self):
        assert isinstance(parse_order("min"), MinOrder)
        assert parse_order("seed:12").seed == 12
        for bad in ("max", "seed:", "seed:x"):
            with pytest.raises(GraphFormatError):
                parse_order(bad)
