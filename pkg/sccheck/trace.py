"""Line-oriented trace files for checked runs, and their replay.

Each event is one line of tab-separated ``key=value`` fields. Environments are
embedded field by field with a ``pre:`` (state at the call) or ``post:``
(state produced) prefix, using the ``environment`` text codec.
"""

import logging
from typing import Dict, Iterable, List, TextIO, Tuple

from .checker import TraceEvent, TraceKind
from .environment import Env, NumMark, dump_env, parse_env, subenv, wf_env
from .errors import GraphFormatError
from .graph import Graph
from .models import CheckReport, CheckSummary

logger = logging.getLogger(__name__)

_CALLS = {TraceKind.CALL_DFS1: TraceKind.RETURN_DFS1, TraceKind.CALL_DFS: TraceKind.RETURN_DFS}


def format_event(event: TraceEvent) -> str:
    fields = [f"kind={event.kind.value}", "subject=" + " ".join(map(str, event.subject))]
    if event.label is not None:
        fields.append(f"label={event.label}")
    if event.value is not None:
        fields.append(f"value={event.value}")
    if event.fuel is not None:
        fields.append(f"fuel={event.fuel}")
    fields.extend(f"pre:{line}" for line in dump_env(event.env_before))
    if event.env_after is not None:
        fields.extend(f"post:{line}" for line in dump_env(event.env_after))
    failed = [r.clause_name for r in event.reports if not r.holds]
    fields.append(f"checked={len(event.reports)}")
    fields.append("failed=" + ",".join(failed))
    return "\t".join(fields)


def write_trace(events: Iterable[TraceEvent], out: TextIO) -> int:
    count = 0
    for event in events:
        out.write(format_event(event) + "\n")
        count += 1
    return count


def _parse_line(number: int, line: str) -> TraceEvent:
    values: Dict[str, str] = {}
    pre: List[str] = []
    post: List[str] = []
    for field in line.rstrip("\n").split("\t"):
        if field.startswith("pre:"):
            pre.append(field[len("pre:"):])
        elif field.startswith("post:"):
            post.append(field[len("post:"):])
        else:
            key, sep, value = field.partition("=")
            if not sep:
                raise GraphFormatError(f"trace line {number}: field without '=': {field!r}")
            values[key] = value
    try:
        kind = TraceKind(values["kind"])
        subject = tuple(int(v) for v in values.get("subject", "").split())
        fuel = int(values["fuel"]) if "fuel" in values else None
    except (KeyError, ValueError) as exc:
        raise GraphFormatError(f"trace line {number}: {exc}") from None
    value = NumMark.parse(values["value"]) if "value" in values else None
    if not pre:
        raise GraphFormatError(f"trace line {number}: no environment")
    return TraceEvent(
        kind=kind,
        subject=subject,
        env_before=parse_env(pre),
        env_after=parse_env(post) if post else None,
        value=value,
        label=values.get("label"),
        fuel=fuel,
    )


def read_trace(lines: Iterable[str]) -> List[TraceEvent]:
    return [
        _parse_line(number, line)
        for number, line in enumerate(lines, start=1)
        if line.strip()
    ]


def replay_trace(g: Graph, lines: Iterable[str]) -> CheckSummary:
    """Re-check a recorded trace against ``g``.

    Every recorded environment is checked for well-formedness, every
    call/return pair for ``subenv``, and the events for balanced nesting.
    """
    summary = CheckSummary()
    open_calls: List[Tuple[TraceKind, Tuple[int, ...], Env]] = []

    def check_env(e: Env) -> None:
        for report in wf_env(g, e):
            summary.record(report)

    events = read_trace(lines)
    for event in events:
        check_env(event.env_before)
        if event.env_after is not None:
            check_env(event.env_after)
        if event.kind in _CALLS:
            open_calls.append((event.kind, event.subject, event.env_before))
            continue
        if event.kind is TraceKind.ASSERT_POINT:
            inside = bool(open_calls) and open_calls[-1][:2] == (TraceKind.CALL_DFS1, event.subject)
            summary.record(
                CheckReport.of("trace.nesting", inside, f"assertion point for {event.subject} outside its dfs1 call")
            )
            continue
        if not open_calls:
            summary.record(CheckReport.fail("trace.nesting", f"{event.kind.value} without a matching call"))
            continue
        kind, subject, entry = open_calls.pop()
        matches = _CALLS[kind] is event.kind and subject == event.subject and entry == event.env_before
        summary.record(
            CheckReport.of(
                "trace.nesting", matches, f"{event.kind.value} on {event.subject} closes {kind.value} on {subject}"
            )
        )
        if event.env_after is not None:
            summary.record(subenv(entry, event.env_after))
    summary.record(
        CheckReport.of("trace.nesting", not open_calls, f"{len(open_calls)} call(s) never returned")
    )
    logger.info(f"replayed {len(events)} events: {summary.evaluated} clauses, {summary.failed} failed")
    return summary
