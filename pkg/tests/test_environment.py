import pytest
from hypothesis import given
from hypothesis import strategies as st
from pyrsistent import plist, pmap, pset

from sccheck.environment import (
    INFINITY,
    UNVISITED,
    Env,
    NumMark,
    add_black,
    add_stack_incr,
    dump_env,
    init_env,
    mark_le,
    mark_min,
    parse_env,
    serial,
    set_infty,
    split,
    strip_suffix,
    subenv,
    wf_env,
    whites,
)
from sccheck.errors import GraphFormatError, StackError
from sccheck.graph import Graph

WF_CLAUSES = [
    "wf_env.wf_color",
    "wf_env.wf_num",
    "wf_env.simplelist",
    "wf_env.no_black_to_white",
    "wf_env.stack_reach_up",
    "wf_env.stack_reach_gray",
    "wf_env.sccs_black",
]


class TestNumMark:
    def test_serials_lie_below_infinity(self):
        assert serial(0) < serial(3) < INFINITY
        assert not INFINITY < serial(10**9)
        assert mark_min(INFINITY, serial(2)) == serial(2)
        assert mark_min(serial(1), serial(2)) == serial(1)

    def test_unvisited_has_no_order(self):
        with pytest.raises(TypeError):
            _ = UNVISITED < serial(0)
        with pytest.raises(TypeError):
            _ = INFINITY >= UNVISITED
        assert not mark_le(UNVISITED, INFINITY)
        assert UNVISITED == NumMark.parse("-")

    def test_text_form(self):
        assert [str(m) for m in (serial(4), INFINITY, UNVISITED)] == ["4", "inf", "-"]
        assert NumMark.parse("inf") is INFINITY
        assert NumMark.parse("7") == serial(7)
        with pytest.raises(GraphFormatError):
            NumMark.parse("-3")


class TestUpdaters:
    def test_add_stack_incr(self):
        e = add_stack_incr(0, Env(sn=0))
        assert e.gray == pset([0])
        assert e.stack_list() == [0]
        assert e.sn == 1
        assert e.mark(0) == serial(0)

    def test_add_black_removes_gray(self):
        e = add_black(0, Env(gray=pset([0])))
        assert e.black == pset([0])
        assert e.gray == pset()

    def test_updaters_leave_their_input_alone(self):
        e = Env()
        add_stack_incr(3, e)
        assert e == Env()

    def test_split_shares_the_tail(self):
        s = plist([3, 2, 1, 0])
        s2, s3 = split(1, s)
        assert list(s2) == [3, 2, 1]
        assert list(s3) == [0]
        assert s3 is s.rest.rest.rest

    def test_split_on_top(self):
        s2, s3 = split(5, plist([5]))
        assert list(s2) == [5]
        assert list(s3) == []

    def test_split_absent_vertex(self):
        with pytest.raises(StackError):
            split(9, plist([1, 2]))
        with pytest.raises(LookupError):
            split(0, plist())

    def test_set_infty(self):
        num = set_infty([1, 2], pmap({0: serial(0), 1: serial(1), 2: serial(2)}))
        assert num == pmap({0: serial(0), 1: INFINITY, 2: INFINITY})

    def test_strip_suffix(self):
        assert strip_suffix([3, 2, 1], [2, 1]) == [3]
        assert strip_suffix([1], [1]) == []
        assert strip_suffix([1, 2], [1]) is None
        assert strip_suffix([1], [0, 1]) is None


class TestWfEnv:
    def test_initial_env_is_well_formed(self):
        g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        reports = wf_env(g, init_env(g))
        assert [r.clause_name for r in reports] == WF_CLAUSES
        assert all(r.holds for r in reports)
        assert whites(g, init_env(g)) == frozenset({0, 1, 2})

    def test_black_to_white_edge(self):
        g = Graph.from_edges(2, [(0, 1)])
        e = Env(black=pset([0]), stack=plist([0]), sn=1, num=pmap({0: serial(0)}))
        reports = {r.clause_name: r for r in wf_env(g, e)}
        failed = reports["wf_env.no_black_to_white"]
        assert not failed.holds
        assert "(0, 1)" in failed.witness

    def test_finished_two_cycle_is_well_formed(self):
        g = Graph.from_edges(2, [(0, 1), (1, 0)])
        e = Env(
            black=pset([0, 1]),
            sccs=pset([frozenset({0, 1})]),
            sn=2,
            num=pmap({0: INFINITY, 1: INFINITY}),
        )
        assert all(r.holds for r in wf_env(g, e))

    def test_missing_scc_is_reported(self):
        g = Graph.from_edges(1, [])
        e = Env(black=pset([0]), stack=plist([0]), sn=1, num=pmap({0: serial(0)}))
        reports = {r.clause_name: r for r in wf_env(g, e)}
        assert not reports["wf_env.sccs_black"].holds

    def test_garbage_env_never_raises(self):
        g = Graph.from_edges(2, [(0, 1)])
        e = Env(
            black=pset([0, 7]),
            gray=pset([0, -1]),
            stack=plist([7, 7, 0]),
            sccs=pset([frozenset({9})]),
            sn=0,
            num=pmap({7: UNVISITED, 0: INFINITY}),
        )
        reports = wf_env(g, e)
        assert len(reports) == 7
        assert not all(r.holds for r in reports)


class TestSubenv:
    def test_push_of_black_vertices(self):
        e = Env(gray=pset([0]), stack=plist([0]), sn=1, num=pmap({0: serial(0)}))
        e2 = Env(
            black=pset([1]),
            gray=pset([0]),
            stack=plist([1, 0]),
            sn=2,
            num=pmap({0: serial(0), 1: serial(1)}),
        )
        assert subenv(e, e2).holds
        assert subenv(e, e).holds

    def test_lost_black_fails(self):
        report = subenv(Env(black=pset([1])), Env())
        assert not report.holds
        assert report.clause_name == "subenv"

    def test_gray_change_fails(self):
        assert not subenv(Env(), Env(gray=pset([0]), stack=plist([0]))).holds

    def test_popped_stack_fails(self):
        e = Env(gray=pset([0]), stack=plist([1, 0]), black=pset([1]))
        assert not subenv(e, Env(gray=pset([0]), stack=plist([0]), black=pset([1]))).holds


class TestCodec:
    def test_dump_lines(self):
        e = Env(
            black=pset([2]),
            gray=pset([0]),
            stack=plist([1, 0]),
            sccs=pset([frozenset({2})]),
            sn=3,
            num=pmap({0: serial(0), 1: serial(1), 2: INFINITY}),
        )
        assert dump_env(e) == [
            "black=2",
            "gray=0",
            "stack=1 0",
            "sccs=2",
            "sn=3",
            "num=0:0 1:1 2:inf",
        ]
        assert parse_env(dump_env(e)) == e

    def test_empty_env(self):
        assert parse_env(dump_env(Env())) == Env()

    @pytest.mark.parametrize(
        "lines",
        [
            ["black=0"],
            ["black=x", "gray=", "stack=", "sccs=", "sn=0", "num="],
            ["black=", "gray=", "stack=", "sccs=", "sn=zero", "num="],
            ["black=", "gray=", "stack=", "sccs=", "sn=0", "num=0"],
            ["nonsense"],
        ],
    )
    def test_bad_input(self, lines):
        with pytest.raises(GraphFormatError):
            parse_env(lines)


marks = st.one_of(st.just(INFINITY), st.integers(min_value=0, max_value=50).map(serial))


class TestMarkMin:
    @given(marks, marks)
    def test_commutative(self, a, b):
        assert mark_min(a, b) == mark_min(b, a)

    @given(marks, marks, marks)
    def test_associative(self, a, b, c):
        assert mark_min(a, mark_min(b, c)) == mark_min(mark_min(a, b), c)

    @given(marks)
    def test_infinity_is_the_identity(self, a):
        assert mark_min(a, INFINITY) == a
        assert mark_min(INFINITY, a) == a

    @given(marks, marks)
    def test_result_is_the_lower_operand(self, a, b):
        low = mark_min(a, b)
        assert low in (a, b)
        assert low <= a and low <= b
