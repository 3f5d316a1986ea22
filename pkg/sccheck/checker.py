"""Ghost-checked execution of the functional search.

A :class:`Checker` rides along a :class:`~sccheck.algorithm.Search` as its
probe. At every call, return, state update and assertion anchor it evaluates
the enabled clause suites and records a :class:`TraceEvent`.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algorithm import ChoiceOrder, DfsResult, Mutation, Probe, Search, fuel_bound, partition_of
from .environment import (
    INFINITY,
    Env,
    NumMark,
    mark_le,
    mark_lt,
    strip_suffix,
    subenv,
    wf_env,
    whites,
)
from .errors import GraphDomainError
from .graph import Graph
from .models import CheckConfig, CheckReport, CheckSummary, FailMode, Suite
from .partition import SccPartition
from .runtime import run_deep

logger = logging.getLogger(__name__)

# Environments whose wf_env reports a Checker keeps at once.
WF_CACHE_SIZE = 16


# ===== Stack predicates =====
def num_of_reachable(n: NumMark, x: int, e: Env, g: Graph) -> bool:
    """Some stack vertex reachable from ``x`` carries the number ``n``."""
    return any(
        e.mark(y) == n and g.reachable(x, y) for y in e.stack if 0 <= y < g.vertex_count
    )


def xedge_to(s1: Sequence[int], s3: Sequence[int], y: int, g: Graph) -> bool:
    """``y`` lies in ``s3`` and is hit by an edge from the part of ``s1`` above ``s3``."""
    s2 = strip_suffix(s1, s3)
    if s2 is None:
        raise GraphDomainError("xedge_to needs s3 to be a suffix of s1")
    if y not in list(s3):
        return False
    return any(g.edge(y2, y) for y2 in s2)


def precedes(x: int, y: int, s: Sequence[int]) -> bool:
    """``x`` is on ``s`` and ``y`` sits at its position or deeper."""
    items = list(s)
    if x not in items:
        return False
    return y in items[items.index(x):]


def is_last(x: int, s: Sequence[int]) -> bool:
    items = list(s)
    return bool(items) and items[-1] == x


def colored_num(g: Graph, e: Env) -> CheckReport:
    for v in sorted(e.colored()):
        if not 0 <= v < g.vertex_count:
            return CheckReport.fail("colored_num", f"colored vertex {v} is not a graph vertex")
        if e.mark(v).is_unvisited:
            return CheckReport.fail("colored_num", f"colored vertex {v} has no number")
    return CheckReport.ok("colored_num")


def _first_failure(reports: Iterable[CheckReport]) -> Optional[CheckReport]:
    return next((r for r in reports if not r.holds), None)


def _as(name: str, report: CheckReport) -> CheckReport:
    return CheckReport.of(name, report.holds, f"{report.clause_name}: {report.witness}")


def _all_hold(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    bad = _first_failure(reports)
    if bad is None:
        return CheckReport.ok(name)
    return _as(name, bad)


# ===== Contracts =====
def check_dfs1_pre(g: Graph, x: int, e: Env, wf: Optional[List[CheckReport]] = None) -> List[CheckReport]:
    if not 0 <= x < g.vertex_count:
        witness = f"{x} is not a vertex"
        return [
            CheckReport.fail("dfs1.pre.vertex", witness),
            CheckReport.fail("dfs1.pre.gray_reach", witness),
            CheckReport.fail("dfs1.pre.white", witness),
            _all_hold("dfs1.pre.wf_env", wf if wf is not None else wf_env(g, e)),
        ]
    unreached = [y for y in sorted(e.gray) if not (0 <= y < g.vertex_count and g.reachable(y, x))]
    return [
        CheckReport.ok("dfs1.pre.vertex"),
        CheckReport.of("dfs1.pre.gray_reach", not unreached, f"gray vertex {unreached and unreached[0]} does not reach {x}"),
        CheckReport.of("dfs1.pre.white", x not in e.black and x not in e.gray, f"vertex {x} is already colored"),
        _all_hold("dfs1.pre.wf_env", wf if wf is not None else wf_env(g, e)),
    ]


def check_dfs_pre(g: Graph, roots: Iterable[int], e: Env, wf: Optional[List[CheckReport]] = None) -> List[CheckReport]:
    roots = list(roots)
    outside = [x for x in roots if not 0 <= x < g.vertex_count]
    missed = [
        (y, x)
        for y in sorted(e.gray)
        for x in roots
        if not outside and not (0 <= y < g.vertex_count and g.reachable(y, x))
    ]
    return [
        CheckReport.of("dfs.pre.roots", not outside, f"root {outside and outside[0]} is not a vertex"),
        CheckReport.of(
            "dfs.pre.access_to",
            not missed,
            f"gray vertex {missed[0][0]} does not reach root {missed[0][1]}" if missed else "",
        ),
        _all_hold("dfs.pre.wf_env", wf if wf is not None else wf_env(g, e)),
    ]


def check_dfs1_post(
    g: Graph, x: int, e: Env, result: DfsResult, wf: Optional[List[CheckReport]] = None
) -> List[CheckReport]:
    n, e2 = result
    wf = wf if wf is not None else wf_env(g, e2)
    together = _first_failure(wf) or _first_failure([subenv(e, e2)])
    reports = [
        CheckReport.of(
            "dfs1.post.wf_env_subenv",
            together is None,
            together and f"{together.clause_name}: {together.witness}",
        ),
        CheckReport.of("dfs1.post.x_black", x in e2.black, f"vertex {x} is not black after dfs1"),
        CheckReport.of(
            "dfs1.post.n_le_num",
            mark_le(n, e2.mark(x)),
            f"returned {n} exceeds num({x}) = {e2.mark(x)}",
        ),
        CheckReport.of(
            "dfs1.post.num_of_reachable",
            n.is_infinity or num_of_reachable(n, x, e2, g),
            f"no stack vertex reachable from {x} carries {n}",
        ),
    ]
    if strip_suffix(e2.stack, e.stack) is None:
        reports.append(CheckReport.fail("dfs1.post.xedge_to", "old stack is not a suffix of the new stack"))
        return reports
    violation = next(
        (
            y
            for y in e.stack
            if 0 <= y < g.vertex_count
            and xedge_to(e2.stack, e.stack, y, g)
            and not mark_le(n, e2.mark(y))
        ),
        None,
    )
    reports.append(
        CheckReport.of(
            "dfs1.post.xedge_to",
            violation is None,
            f"cross edge into old stack vertex {violation} (num {e2.mark(violation) if violation is not None else ''}) below returned {n}",
        )
    )
    return reports


def check_post_dfs(
    roots: Iterable[int], e: Env, e2: Env, m: NumMark, g: Graph, wf: Optional[List[CheckReport]] = None
) -> List[CheckReport]:
    """The four clauses every completed ``dfs`` (or ``dfs1`` on ``{x}``) satisfies."""
    white = whites(g, e)
    cone = set()
    for x in roots:
        if 0 <= x < g.vertex_count:
            cone |= g.white_reachable(white, x)
    expected_whites = white - cone
    actual_whites = whites(g, e2)
    lowest = INFINITY
    unnumbered = None
    for y in sorted(cone):
        mark = e2.mark(y)
        if mark.is_unvisited:
            unnumbered = y
            break
        if mark < lowest:
            lowest = mark
    if unnumbered is not None:
        min_report = CheckReport.fail("post_dfs.min", f"reached vertex {unnumbered} has no number")
    else:
        min_report = CheckReport.of(
            "post_dfs.min", m == lowest, f"returned {m} but the least number reached is {lowest}"
        )
    extra = sorted(actual_whites ^ expected_whites)
    return [
        _all_hold("post_dfs.invariants", wf if wf is not None else wf_env(g, e2)),
        _as("post_dfs.subenv", subenv(e, e2)),
        CheckReport.of(
            "post_dfs.whites",
            actual_whites == expected_whites,
            f"vertex {extra and extra[0]} has the wrong whiteness after the search",
        ),
        min_report,
    ]


def check_assertions_dfs1(branch: str, bindings: Dict[str, Any], g: Graph) -> List[CheckReport]:
    """The in-body assertions of ``dfs1``: A1-A2 on the lower branch, A3-A7 on the pop branch."""
    x, e, e1 = bindings["x"], bindings["e"], bindings["e1"]
    if branch == "lower":
        stack = list(e1.stack)
        below = any(y != x and precedes(x, y, stack) and g.reachable(x, y) for y in stack)
        lower_gray = any(
            y != x and mark_lt(e1.mark(y), e1.mark(x)) and g.in_same_scc(x, y)
            for y in e1.gray
            if 0 <= y < g.vertex_count
        )
        return [
            CheckReport.of("A1", below, f"no vertex below {x} on the stack is reachable from it"),
            CheckReport.of("A2", lower_gray, f"no lower gray vertex shares a component with {x}"),
        ]
    s2, s3 = list(bindings["s2"]), list(bindings["s3"])
    members = frozenset(s2)
    outside_black = sorted(v for v in members if v != x and v not in e1.black)
    a3 = is_last(x, s2) and s3 == list(e.stack) and not outside_black
    if not is_last(x, s2):
        a3_witness = f"{x} is not the last popped vertex of {s2}"
    elif s3 != list(e.stack):
        a3_witness = "remaining stack differs from the stack at entry"
    else:
        a3_witness = f"popped vertex {outside_black and outside_black[0]} is not black"
    missing = sorted(g.component(x) - members)
    shared_gray = sorted(e.gray & members)
    return [
        CheckReport.of("A3", a3, a3_witness),
        CheckReport.of("A4", g.is_subscc(members), f"popped set {sorted(members)} is not strongly connected"),
        CheckReport.of("A5", not missing, f"vertex {missing and missing[0]} shares a component with {x} but was not popped"),
        CheckReport.of("A6", g.is_scc(members), f"popped set {sorted(members)} is not a strongly connected component"),
        CheckReport.of("A7", not shared_gray, f"popped vertex {shared_gray and shared_gray[0]} was gray at entry"),
    ]


def check_update_pre(name: str, x: int, e: Env) -> CheckReport:
    if name == "add_stack_incr":
        fresh = x not in e.black and x not in e.gray and e.mark(x).is_unvisited
        return CheckReport.of("pre.add_stack_incr", fresh, f"vertex {x} was already visited")
    return CheckReport.of("pre.add_black", x in e.gray, f"vertex {x} is not gray")


# ===== Measures =====
@dataclass(frozen=True)
class Measure:
    """Termination measures of one call: the lexicographic tuple and the set triple."""

    why3: Tuple[int, ...]
    white: FrozenSet[int]
    focus: FrozenSet[int]
    tag: int

    @classmethod
    def for_dfs1(cls, g: Graph, x: int, e: Env) -> "Measure":
        white = whites(g, e)
        return cls((len(white), 0), white, frozenset((x,)), 1)

    @classmethod
    def for_dfs(cls, g: Graph, roots: Iterable[int], e: Env) -> "Measure":
        white = whites(g, e)
        focus = frozenset(roots)
        return cls((len(white), 1, len(focus)), white, focus, 2)

    def why3_below(self, other: "Measure") -> bool:
        return self.why3 < other.why3

    def isabelle_below(self, other: "Measure") -> bool:
        if self.white != other.white:
            return self.white < other.white
        if self.focus != other.focus:
            return self.focus < other.focus
        return self.tag < other.tag


class TraceKind(str, Enum):
    CALL_DFS1 = "call_dfs1"
    CALL_DFS = "call_dfs"
    RETURN_DFS1 = "return_dfs1"
    RETURN_DFS = "return_dfs"
    ASSERT_POINT = "assert_point"


@dataclass
class TraceEvent:
    kind: TraceKind
    subject: Tuple[int, ...]
    env_before: Env
    env_after: Optional[Env] = None
    value: Optional[NumMark] = None
    label: Optional[str] = None
    fuel: Optional[int] = None
    measure: Optional[Measure] = None
    caller_measure: Optional[Measure] = None
    reports: List[CheckReport] = field(default_factory=list)


def check_measures(event: TraceEvent, g: Graph) -> List[CheckReport]:
    reports = []
    if event.measure is not None and event.caller_measure is not None:
        callee, caller = event.measure, event.caller_measure
        reports.append(
            CheckReport.of(
                "measure.why3",
                callee.why3_below(caller),
                f"call measure {callee.why3} is not below caller measure {caller.why3}",
            )
        )
        reports.append(
            CheckReport.of(
                "measure.isabelle",
                callee.isabelle_below(caller),
                f"call on {sorted(callee.focus)} (tag {callee.tag}) does not descend from {sorted(caller.focus)} (tag {caller.tag})",
            )
        )
    reports.append(colored_num(g, event.env_before))
    return reports


def fuel_report(g: Graph, roots: Sequence[int], e: Env, fuel: int) -> CheckReport:
    need = len(whites(g, e)) * (g.vertex_count + 1) + len(roots)
    return CheckReport.of("fuel.bound", fuel >= need, f"fuel {fuel} below required {need}")


# ===== Checker =====
class CheckHalted(Exception):
    def __init__(self, report: CheckReport):
        super().__init__(str(report))
        self.report = report


class Checker(Probe):
    def __init__(self, g: Graph, config: CheckConfig):
        self.g = g
        self.config = config
        self.summary = CheckSummary()
        self.events: List[TraceEvent] = []
        self.failures: List[CheckReport] = []
        self._frames: List[Measure] = []
        self._wf: "OrderedDict[int, Tuple[Env, List[CheckReport]]]" = OrderedDict()

    def wf(self, e: Env) -> List[CheckReport]:
        """``wf_env`` of ``e``, remembered for the last few environments seen."""
        cached = self._wf.get(id(e))
        if cached is not None and cached[0] is e:
            self._wf.move_to_end(id(e))
            return cached[1]
        cached = self._wf[id(e)] = (e, wf_env(self.g, e))
        self._wf.move_to_end(id(e))
        while len(self._wf) > WF_CACHE_SIZE:
            self._wf.popitem(last=False)
        return cached[1]

    def record(self, event: Optional[TraceEvent], reports: Iterable[CheckReport]) -> None:
        for report in reports:
            if event is not None:
                event.reports.append(report)
            self.summary.record(report)
            if report.holds:
                continue
            if self.summary.failures_by_clause[report.clause_name] == 1:
                logger.warning(f"clause {report.clause_name} failed: {report.witness}")
            self.failures.append(report)
            if self.config.fail_mode is FailMode.HALT_ON_FIRST:
                self.summary.halted = True
                raise CheckHalted(report)

    def last_event(self) -> Optional[TraceEvent]:
        return self.events[-1] if self.events else None

    def _event(self, event: TraceEvent) -> TraceEvent:
        self.events.append(event)
        return event

    def _wf_step(self, e: Env) -> List[CheckReport]:
        return list(self.wf(e)) if self.config.has(Suite.WF_ENV_EACH_STEP) else []

    def enter_dfs1(self, x: int, e: Env, fuel: Optional[int]) -> None:
        caller = self._frames[-1] if self._frames else None
        measure = Measure.for_dfs1(self.g, x, e)
        event = self._event(TraceEvent(TraceKind.CALL_DFS1, (x,), e, fuel=fuel, measure=measure, caller_measure=caller))
        self._frames.append(measure)
        reports = []
        if self.config.has(Suite.PRECONDITIONS):
            reports += check_dfs1_pre(self.g, x, e, self.wf(e))
        reports += self._wf_step(e)
        if self.config.has(Suite.MEASURES):
            reports += check_measures(event, self.g)
        self.record(event, reports)

    def exit_dfs1(self, x: int, e: Env, result: DfsResult) -> None:
        self._frames.pop()
        n, e2 = result
        event = self._event(TraceEvent(TraceKind.RETURN_DFS1, (x,), e, e2, value=n))
        reports = []
        if self.config.has(Suite.POSTCONDITIONS):
            reports += check_dfs1_post(self.g, x, e, result, self.wf(e2))
        if self.config.has(Suite.COQ_POST):
            reports += check_post_dfs((x,), e, e2, n, self.g, self.wf(e2))
        reports += self._wf_step(e2)
        self.record(event, reports)

    def enter_dfs(self, roots: Tuple[int, ...], e: Env, fuel: Optional[int]) -> None:
        caller = self._frames[-1] if self._frames else None
        measure = Measure.for_dfs(self.g, roots, e)
        event = self._event(TraceEvent(TraceKind.CALL_DFS, roots, e, fuel=fuel, measure=measure, caller_measure=caller))
        self._frames.append(measure)
        reports = []
        if self.config.has(Suite.PRECONDITIONS):
            reports += check_dfs_pre(self.g, roots, e, self.wf(e))
        reports += self._wf_step(e)
        if self.config.has(Suite.MEASURES):
            reports += check_measures(event, self.g)
        if fuel is not None and self.config.has(Suite.FUEL_BOUND):
            reports.append(fuel_report(self.g, roots, e, fuel))
        self.record(event, reports)

    def exit_dfs(self, roots: Tuple[int, ...], e: Env, result: DfsResult) -> None:
        self._frames.pop()
        m, e2 = result
        event = self._event(TraceEvent(TraceKind.RETURN_DFS, roots, e, e2, value=m))
        reports = []
        if self.config.has(Suite.POSTCONDITIONS):
            reports.append(_as("dfs.post.subenv", subenv(e, e2)))
        if self.config.has(Suite.COQ_POST):
            reports += check_post_dfs(roots, e, e2, m, self.g, self.wf(e2))
        reports += self._wf_step(e2)
        self.record(event, reports)

    def before_update(self, name: str, x: int, e: Env) -> None:
        if self.config.has(Suite.PRECONDITIONS):
            self.record(self.last_event(), [check_update_pre(name, x, e)])

    def assertion_point(self, branch: str, bindings: Dict[str, Any]) -> None:
        event = self._event(
            TraceEvent(
                TraceKind.ASSERT_POINT,
                (bindings["x"],),
                bindings["e"],
                bindings["e1"],
                value=bindings["n1"],
                label=branch,
            )
        )
        if self.config.has(Suite.ASSERTIONS):
            self.record(event, check_assertions_dfs1(branch, bindings, self.g))


def first_failures(events: Iterable[TraceEvent]) -> List[CheckReport]:
    """The first failing report of each clause, in the order they occurred."""
    seen: Dict[str, CheckReport] = {}
    for event in events:
        for report in event.reports:
            if not report.holds:
                seen.setdefault(report.clause_name, report)
    return list(seen.values())


def check_partition(g: Graph, partition: SccPartition) -> CheckReport:
    """The final answer holds exactly the strongly connected components."""
    expected = SccPartition({g.component(v) for v in g.vertices})
    return CheckReport.of(
        "tarjan.post.sccs", partition == expected, f"returned {partition!r}, expected {expected!r}"
    )


def run_checked(
    g: Graph,
    config: Optional[CheckConfig] = None,
    order: Optional[ChoiceOrder] = None,
    mutation: Optional[Mutation] = None,
    fuel: Optional[int] = None,
) -> Tuple[Optional[SccPartition], List[TraceEvent], CheckSummary]:
    """Run the search under the checker; failures are reported, never raised.

    With the fuel suite enabled and no explicit ``fuel`` the run uses
    :func:`~sccheck.algorithm.fuel_bound`.
    """
    config = config or CheckConfig()
    checker = Checker(g, config)
    search = Search(g, order, probe=checker, mutation=mutation)
    if fuel is None and config.has(Suite.FUEL_BOUND):
        fuel = fuel_bound(g)
    partition = None
    try:
        _, e = run_deep(search.run, fuel)
        partition = partition_of(e)
        if config.has(Suite.POSTCONDITIONS) and not search.exhausted:
            checker.record(checker.last_event(), [check_partition(g, partition)])
    except CheckHalted as halt:
        logger.info(f"checked run halted at {halt.report.clause_name}")
    except Exception as exc:
        logger.warning(f"algorithm raised {type(exc).__name__}: {exc}")
        try:
            checker.record(checker.last_event(), [CheckReport.fail("algorithm.error", f"{type(exc).__name__}: {exc}")])
        except CheckHalted:
            pass
    if search.exhausted:
        checker.summary.fuel_exhausted = True
        partition = None
        try:
            checker.record(checker.last_event(), [CheckReport.fail("fuel.exhausted", f"fuel {fuel} ran out before the search finished")])
        except CheckHalted:
            pass
    logger.info(
        f"checked run on {g.vertex_count} vertices: {checker.summary.evaluated} clauses, "
        f"{checker.summary.failed} failed"
    )
    return partition, checker.events, checker.summary
