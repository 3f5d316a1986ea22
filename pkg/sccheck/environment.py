"""The environment record threaded through the search and its predicates.

``Env`` values are persistent: every updater returns a fresh value and shares
structure with its input. ``black`` and ``gray`` are ghost fields; the search
only needs them so the checker can talk about colors.
"""

import dataclasses
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pyrsistent import PList, PMap, PSet, plist, pmap, pset

from .errors import GraphFormatError, StackError
from .graph import Graph
from .models import CheckReport

__all__ = [
    "CheckReport",
    "Env",
    "INFINITY",
    "NumMark",
    "UNVISITED",
    "add_black",
    "add_stack_incr",
    "dump_env",
    "init_env",
    "mark_le",
    "mark_lt",
    "mark_min",
    "parse_env",
    "serial",
    "set_infty",
    "split",
    "strip_suffix",
    "subenv",
    "wf_env",
    "whites",
]


# ===== Serial numbers =====
class MarkKind(IntEnum):
    SERIAL = 0
    INFINITY = 1
    UNVISITED = 2


class NumMark:
    """A vertex number: ``Unvisited``, ``Serial(n)`` or ``Infinity``.

    Serials are ordered by value and all lie below ``Infinity``. ``Unvisited``
    only supports equality; ordering it raises ``TypeError``.
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind: MarkKind, value: int = 0):
        self.kind = kind
        self.value = value if kind is MarkKind.SERIAL else 0

    @property
    def is_serial(self) -> bool:
        return self.kind is MarkKind.SERIAL

    @property
    def is_infinity(self) -> bool:
        return self.kind is MarkKind.INFINITY

    @property
    def is_unvisited(self) -> bool:
        return self.kind is MarkKind.UNVISITED

    def _key(self) -> Tuple[int, int]:
        if self.kind is MarkKind.UNVISITED:
            raise TypeError("an unvisited mark has no position in the serial order")
        return (self.kind, self.value)

    def __lt__(self, other: "NumMark") -> bool:
        if not isinstance(other, NumMark):
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: "NumMark") -> bool:
        if not isinstance(other, NumMark):
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: "NumMark") -> bool:
        if not isinstance(other, NumMark):
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: "NumMark") -> bool:
        if not isinstance(other, NumMark):
            return NotImplemented
        return self._key() >= other._key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumMark):
            return NotImplemented
        return self.kind is other.kind and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.kind, self.value))

    def __str__(self) -> str:
        if self.kind is MarkKind.SERIAL:
            return str(self.value)
        return "inf" if self.kind is MarkKind.INFINITY else "-"

    def __repr__(self) -> str:
        if self.kind is MarkKind.SERIAL:
            return f"Serial({self.value})"
        return "Infinity" if self.kind is MarkKind.INFINITY else "Unvisited"

    @classmethod
    def parse(cls, text: str) -> "NumMark":
        text = text.strip()
        if text == "inf":
            return INFINITY
        if text == "-":
            return UNVISITED
        try:
            value = int(text)
        except ValueError:
            raise GraphFormatError(f"not a vertex number: {text!r}") from None
        if value < 0:
            raise GraphFormatError(f"serial numbers are natural, got {value}")
        return serial(value)


INFINITY = NumMark(MarkKind.INFINITY)
UNVISITED = NumMark(MarkKind.UNVISITED)


def serial(n: int) -> NumMark:
    return NumMark(MarkKind.SERIAL, n)


def mark_min(a: NumMark, b: NumMark) -> NumMark:
    """Minimum of two visited marks; ``Infinity`` is the identity."""
    return b if b < a else a


def mark_le(a: NumMark, b: NumMark) -> bool:
    """``a <= b``, simply false when either side is unvisited."""
    if a.is_unvisited or b.is_unvisited:
        return False
    return a <= b


def mark_lt(a: NumMark, b: NumMark) -> bool:
    if a.is_unvisited or b.is_unvisited:
        return False
    return a < b


# ===== Environment =====
@dataclass(frozen=True)
class Env:
    black: PSet = pset()
    gray: PSet = pset()
    stack: PList = plist()  # head is the top
    sccs: PSet = pset()  # of frozensets
    sn: int = 0
    num: PMap = pmap()  # absent vertices are unvisited

    def mark(self, x: int) -> NumMark:
        return self.num.get(x, UNVISITED)

    def stack_list(self) -> List[int]:
        """The stack as a Python list, top first."""
        return list(self.stack)

    def scc_members(self) -> FrozenSet[int]:
        members = set()
        for component in self.sccs:
            members.update(component)
        return frozenset(members)

    def colored(self) -> PSet:
        return self.black | self.gray


def init_env(g: Graph) -> Env:
    return Env()


def whites(g: Graph, e: Env) -> FrozenSet[int]:
    return frozenset(v for v in g.vertices if v not in e.black and v not in e.gray)


def add_stack_incr(x: int, e: Env) -> Env:
    n = e.sn
    return dataclasses.replace(
        e,
        gray=e.gray.add(x),
        stack=e.stack.cons(x),
        sn=n + 1,
        num=e.num.set(x, serial(n)),
    )


def add_black(x: int, e: Env) -> Env:
    return dataclasses.replace(e, black=e.black.add(x), gray=e.gray.discard(x))


def split(x: int, s: PList) -> Tuple[PList, PList]:
    """Cut ``s`` just below ``x``: ``(s2, s3)`` with ``s2`` ending in ``x``.

    ``s3`` is the tail node of ``s`` itself, so no copy of the rest of the
    stack is made.
    """
    prefix = []
    rest = s
    while rest:
        head = rest.first
        rest = rest.rest
        prefix.append(head)
        if head == x:
            return plist(prefix), rest
    raise StackError(f"vertex {x} is not on the stack")


def set_infty(s: Iterable[int], num: PMap) -> PMap:
    evolver = num.evolver()
    for v in s:
        evolver[v] = INFINITY
    return evolver.persistent()


def strip_suffix(s1: Iterable[int], s3: Iterable[int]) -> Optional[List[int]]:
    """The prefix ``s2`` with ``s1 == s2 ++ s3``, or ``None`` if ``s3`` is no suffix of ``s1``."""
    longer, shorter = list(s1), list(s3)
    cut = len(longer) - len(shorter)
    if cut < 0 or longer[cut:] != shorter:
        return None
    return longer[:cut]


# ===== Well-formedness =====
def _outside(g: Graph, vs: Iterable[int]) -> List[int]:
    return sorted(v for v in vs if not 0 <= v < g.vertex_count)


def _wf_color(g: Graph, e: Env, stack: List[int], members: FrozenSet[int]) -> CheckReport:
    name = "wf_env.wf_color"
    both = sorted(e.black & e.gray)
    if both:
        return CheckReport.fail(name, f"vertex {both[0]} is both black and gray")
    outside = _outside(g, e.colored())
    if outside:
        return CheckReport.fail(name, f"colored vertex {outside[0]} is not a graph vertex")
    on_stack = set(stack)
    for v in stack:
        if v not in e.black and v not in e.gray:
            return CheckReport.fail(name, f"stack vertex {v} is white")
    for v in sorted(e.gray):
        if v not in on_stack:
            return CheckReport.fail(name, f"gray vertex {v} is not on the stack")
    for v in sorted(members):
        if v not in e.black:
            return CheckReport.fail(name, f"scc member {v} is not black")
        if v in on_stack:
            return CheckReport.fail(name, f"scc member {v} is still on the stack")
    for v in sorted(e.black):
        if v not in on_stack and v not in members:
            return CheckReport.fail(name, f"black vertex {v} is neither on the stack nor in sccs")
    return CheckReport.ok(name)


def _wf_num(g: Graph, e: Env, stack: List[int], members: FrozenSet[int]) -> CheckReport:
    name = "wf_env.wf_num"
    stray = _outside(g, e.num.keys())
    if stray:
        return CheckReport.fail(name, f"num is set for non-vertex {stray[0]}")
    for v in g.vertices:
        mark = e.mark(v)
        colored = v in e.black or v in e.gray
        if mark.is_unvisited and colored:
            return CheckReport.fail(name, f"colored vertex {v} is unvisited")
        if not mark.is_unvisited and not colored:
            return CheckReport.fail(name, f"white vertex {v} has num {mark}")
        if mark.is_infinity and v not in members:
            return CheckReport.fail(name, f"vertex {v} has num inf but belongs to no scc")
        if v in members and not mark.is_infinity:
            return CheckReport.fail(name, f"scc member {v} has num {mark}")
        if mark.is_serial and mark.value >= e.sn:
            return CheckReport.fail(name, f"vertex {v} has num {mark} >= sn {e.sn}")
    for v in stack:
        if not e.mark(v).is_serial:
            return CheckReport.fail(name, f"stack vertex {v} has num {e.mark(v)}")
    for upper, lower in zip(stack, stack[1:]):
        if not e.mark(lower) < e.mark(upper):
            return CheckReport.fail(
                name,
                f"stack order broken: {lower} (num {e.mark(lower)}) lies below {upper} (num {e.mark(upper)})",
            )
    return CheckReport.ok(name)


def _simplelist(stack: List[int]) -> CheckReport:
    seen = set()
    for position, v in enumerate(stack):
        if v in seen:
            return CheckReport.fail("wf_env.simplelist", f"vertex {v} repeats at stack position {position}")
        seen.add(v)
    return CheckReport.ok("wf_env.simplelist")


def _no_black_to_white(g: Graph, e: Env) -> CheckReport:
    name = "wf_env.no_black_to_white"
    for b in sorted(e.black):
        if not 0 <= b < g.vertex_count:
            continue
        for y in g.adjacency(b):
            if y not in e.black and y not in e.gray:
                return CheckReport.fail(name, f"edge ({b}, {y}) from black to white")
    return CheckReport.ok(name)


def _on_graph(g: Graph, stack: List[int]) -> List[int]:
    return [v for v in stack if 0 <= v < g.vertex_count]


def _stack_reach_up(g: Graph, e: Env, stack: List[int]) -> CheckReport:
    name = "wf_env.stack_reach_up"
    for x in stack:
        for y in stack:
            if mark_le(e.mark(x), e.mark(y)) and not g.reachable(x, y):
                return CheckReport.fail(
                    name, f"num({x}) <= num({y}) but {y} is not reachable from {x}"
                )
    return CheckReport.ok(name)


def _stack_reach_gray(g: Graph, e: Env, stack: List[int]) -> CheckReport:
    name = "wf_env.stack_reach_gray"
    grays = [x for x in e.gray if 0 <= x < g.vertex_count]
    for y in stack:
        if not any(mark_le(e.mark(x), e.mark(y)) and g.reachable(y, x) for x in grays):
            return CheckReport.fail(name, f"stack vertex {y} reaches no gray vertex numbered at most num({y})")
    return CheckReport.ok(name)


def _sccs_black(g: Graph, e: Env) -> CheckReport:
    name = "wf_env.sccs_black"
    expected = set()
    for v in e.black:
        if 0 <= v < g.vertex_count:
            component = g.component(v)
            if all(w in e.black for w in component):
                expected.add(component)
    actual = set(frozenset(c) for c in e.sccs)
    extra = actual - expected
    if extra:
        bad = min(extra, key=lambda c: sorted(c))
        return CheckReport.fail(name, f"sccs holds {sorted(bad)}, which is not a black scc")
    missing = expected - actual
    if missing:
        bad = min(missing, key=lambda c: sorted(c))
        return CheckReport.fail(name, f"black scc {sorted(bad)} is missing from sccs")
    return CheckReport.ok(name)


def wf_env(g: Graph, e: Env) -> List[CheckReport]:
    """Evaluate the seven well-formedness clauses, in order. Never raises."""
    stack = e.stack_list()
    members = e.scc_members()
    reachable_stack = _on_graph(g, stack)
    return [
        _wf_color(g, e, stack, members),
        _wf_num(g, e, stack, members),
        _simplelist(stack),
        _no_black_to_white(g, e),
        _stack_reach_up(g, e, reachable_stack),
        _stack_reach_gray(g, e, reachable_stack),
        _sccs_black(g, e),
    ]


def subenv(e: Env, e2: Env) -> CheckReport:
    """``e2`` extends ``e``: more black, same gray, stack grown by black vertices, more sccs."""
    name = "subenv"
    if not e.black <= e2.black:
        lost = sorted(e.black - e2.black)
        return CheckReport.fail(name, f"black vertex {lost[0]} is no longer black")
    if e.gray != e2.gray:
        diff = sorted(e.gray ^ e2.gray)
        return CheckReport.fail(name, f"gray sets differ on vertex {diff[0]}")
    grown = strip_suffix(e2.stack, e.stack)
    if grown is None:
        return CheckReport.fail(name, "old stack is not a suffix of the new stack")
    for v in grown:
        if v not in e2.black:
            return CheckReport.fail(name, f"pushed vertex {v} is not black")
    lost_sccs = [c for c in e.sccs if c not in e2.sccs]
    if lost_sccs:
        return CheckReport.fail(name, f"scc {sorted(lost_sccs[0])} disappeared")
    for v in e.stack:
        if e.mark(v) != e2.mark(v):
            return CheckReport.fail(name, f"num({v}) changed from {e.mark(v)} to {e2.mark(v)}")
    return CheckReport.ok(name)


# ===== Text codec =====
def _ints(values: Iterable[int]) -> str:
    return " ".join(map(str, values))


def dump_env(e: Env) -> List[str]:
    """One ``field=value`` line per field; the stack is listed top first."""
    components = sorted(tuple(sorted(c)) for c in e.sccs)
    return [
        f"black={_ints(sorted(e.black))}",
        f"gray={_ints(sorted(e.gray))}",
        f"stack={_ints(e.stack)}",
        "sccs=" + "|".join(_ints(c) for c in components),
        f"sn={e.sn}",
        "num=" + " ".join(f"{v}:{e.num[v]}" for v in sorted(e.num.keys())),
    ]


def _parse_ints(field: str, text: str) -> List[int]:
    try:
        return [int(part) for part in text.split()]
    except ValueError:
        raise GraphFormatError(f"bad vertex list in {field}: {text!r}") from None


def parse_env(lines: Iterable[str]) -> Env:
    fields: Dict[str, str] = {}
    for line in lines:
        key, sep, value = line.partition("=")
        if not sep:
            raise GraphFormatError(f"env line without '=': {line!r}")
        fields[key.strip()] = value.strip()
    required = ("black", "gray", "stack", "sccs", "sn", "num")
    absent = [key for key in required if key not in fields]
    if absent:
        raise GraphFormatError(f"env is missing field(s): {', '.join(absent)}")
    sccs = [
        frozenset(_parse_ints("sccs", part))
        for part in fields["sccs"].split("|")
        if part.strip()
    ]
    num = {}
    for pair in fields["num"].split():
        vertex, sep, mark = pair.partition(":")
        if not sep:
            raise GraphFormatError(f"bad num entry: {pair!r}")
        ids = _parse_ints("num", vertex)
        if len(ids) != 1:
            raise GraphFormatError(f"bad num entry: {pair!r}")
        num[ids[0]] = NumMark.parse(mark)
    try:
        sn = int(fields["sn"])
    except ValueError:
        raise GraphFormatError(f"bad sn: {fields['sn']!r}") from None
    return Env(
        black=pset(_parse_ints("black", fields["black"])),
        gray=pset(_parse_ints("gray", fields["gray"])),
        stack=plist(_parse_ints("stack", fields["stack"])),
        sccs=pset(sccs),
        sn=sn,
        num=pmap(num),
    )
