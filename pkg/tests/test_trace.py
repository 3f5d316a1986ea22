import io

import pytest

from sccheck.algorithm import Mutation
from sccheck.checker import TraceKind, run_checked
from sccheck.errors import GraphFormatError
from sccheck.graph import Graph
from sccheck.trace import format_event, read_trace, replay_trace, write_trace

GRAPH = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])


def _trace_lines(g=GRAPH, **kwargs):
    _, events, _ = run_checked(g, **kwargs)
    out = io.StringIO()
    count = write_trace(events, out)
    assert count == len(events)
    return events, out.getvalue().splitlines()


def test_lines_carry_kind_and_environments():
    events, lines = _trace_lines()
    first = lines[0].split("\t")
    assert first[0] == "kind=call_dfs"
    assert "subject=0 1 2" in first
    assert "pre:black=" in first
    assert any(line.startswith("kind=assert_point") and "label=" in line for line in lines)
    assert lines[-1].startswith("kind=return_dfs")
    assert "failed=" in lines[-1].split("\t")


def test_read_back_events():
    events, lines = _trace_lines()
    parsed = read_trace(lines)
    assert [e.kind for e in parsed] == [e.kind for e in events]
    assert [e.subject for e in parsed] == [e.subject for e in events]
    assert [e.env_before for e in parsed] == [e.env_before for e in events]
    assert [e.env_after for e in parsed] == [e.env_after for e in events]
    assert [e.value for e in parsed] == [e.value for e in events]


def test_replay_of_a_clean_run_passes():
    _, lines = _trace_lines()
    summary = replay_trace(GRAPH, lines)
    assert summary.ok
    assert summary.evaluated > 0


def test_replay_of_a_truncated_trace_fails_nesting():
    _, lines = _trace_lines()
    summary = replay_trace(GRAPH, lines[:-1])
    assert not summary.ok
    assert "trace.nesting" in summary.failures_by_clause


def test_replay_spots_a_broken_environment():
    _, lines = _trace_lines(mutation=Mutation.SKIP_SET_INFTY)
    summary = replay_trace(GRAPH, lines)
    assert "wf_env.wf_num" in summary.failures_by_clause


def test_replay_against_another_graph_fails():
    _, lines = _trace_lines()
    summary = replay_trace(Graph.from_edges(3, [(0, 1), (1, 2)]), lines)
    assert not summary.ok


def test_format_event_marks_failures():
    _, events, _ = run_checked(GRAPH, mutation=Mutation.FORGET_ADD_BLACK)
    failing = [e for e in events if any(not r.holds for r in e.reports)]
    assert failing
    line = format_event(failing[0])
    assert "failed=" in line
    assert not line.endswith("failed=")


@pytest.mark.parametrize(
    "line",
    [
        "kind=call_dfs\tsubject=0",
        "kind=nonsense\tsubject=0\tpre:black=",
        "kind=call_dfs\tsubject=x\tpre:black=",
        "kind=call_dfs\tgarbage",
    ],
)
def test_bad_lines(line):
    with pytest.raises(GraphFormatError):
        read_trace([line])


def test_blank_lines_are_skipped():
    assert read_trace(["", "   "]) == []


def test_assert_points_are_recorded_inside_dfs1():
    events, _ = _trace_lines()
    for i, event in enumerate(events):
        if event.kind is TraceKind.ASSERT_POINT:
            calls = [e for e in events[:i] if e.kind is TraceKind.CALL_DFS1 and e.subject == event.subject]
            assert calls
