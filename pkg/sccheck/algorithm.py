"""Functional Tarjan: mutually recursive ``dfs1``/``dfs`` over persistent environments.

One engine, :class:`Search`, serves every entry point. It optionally carries
fuel (the structurally recursive driver), a probe that observes calls, returns
and updates (the checker), and a deliberate bug for mutation testing.
"""

import dataclasses
import logging
from enum import Enum
from typing import Any, Dict, Iterable, NamedTuple, Optional, Tuple

from pyrsistent import plist

from .environment import (
    INFINITY,
    Env,
    NumMark,
    add_black,
    add_stack_incr,
    init_env,
    mark_min,
    serial,
    set_infty,
    split,
)
from .errors import GraphFormatError
from .gen import splitmix64
from .graph import Graph
from .partition import SccPartition
from .runtime import run_deep

logger = logging.getLogger(__name__)


# ===== Choice orders =====
class ChoiceOrder:
    """Picks the next root: the member of smallest rank."""

    def rank(self, v: int) -> Any:
        raise NotImplementedError

    def arrange(self, vertices: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(vertices, key=self.rank))

    def choose(self, vertices: Iterable[int]) -> int:
        return min(vertices, key=self.rank)


class MinOrder(ChoiceOrder):
    def rank(self, v: int) -> int:
        return v

    def __repr__(self) -> str:
        return "min"


class SeededOrder(ChoiceOrder):
    """A fixed pseudorandom permutation of the vertex ids."""

    def __init__(self, seed: int):
        self.seed = seed

    def rank(self, v: int) -> Tuple[int, int]:
        return (splitmix64(self.seed ^ v), v)

    def __repr__(self) -> str:
        return f"seed:{self.seed}"


def parse_order(text: str) -> ChoiceOrder:
    text = text.strip()
    if text == "min":
        return MinOrder()
    if text.startswith("seed:"):
        try:
            return SeededOrder(int(text[len("seed:"):]))
        except ValueError:
            pass
    raise GraphFormatError(f"unknown choice order {text!r} (expected 'min' or 'seed:<k>')")


# ===== Mutations =====
class Mutation(str, Enum):
    """Deliberate bugs the checker is expected to catch."""

    SKIP_SET_INFTY = "skip_set_infty"
    SPLIT_ONE_SHORT = "split_one_short"
    FORGET_ADD_BLACK = "forget_add_black"
    WRONG_MIN = "wrong_min"
    SKIP_GRAY_ADD = "skip_gray_add"
    LE_COMPARE = "le_compare"


class DfsResult(NamedTuple):
    value: NumMark
    env: Env


class Probe:
    """Observer hooks called by :class:`Search`; the default does nothing."""

    def enter_dfs1(self, x: int, e: Env, fuel: Optional[int]) -> None:
        pass

    def exit_dfs1(self, x: int, e: Env, result: DfsResult) -> None:
        pass

    def enter_dfs(self, roots: Tuple[int, ...], e: Env, fuel: Optional[int]) -> None:
        pass

    def exit_dfs(self, roots: Tuple[int, ...], e: Env, result: DfsResult) -> None:
        pass

    def before_update(self, name: str, x: int, e: Env) -> None:
        pass

    def assertion_point(self, branch: str, bindings: Dict[str, Any]) -> None:
        pass


# ===== Search =====
class Search:
    def __init__(
        self,
        g: Graph,
        order: Optional[ChoiceOrder] = None,
        probe: Optional[Probe] = None,
        mutation: Optional[Mutation] = None,
    ):
        self.g = g
        self.order = order or MinOrder()
        self.probe = probe or Probe()
        self.mutation = mutation
        self.exhausted = False

    def _push(self, x: int, e: Env) -> Env:
        self.probe.before_update("add_stack_incr", x, e)
        if self.mutation is Mutation.SKIP_GRAY_ADD:
            return dataclasses.replace(
                e, stack=e.stack.cons(x), sn=e.sn + 1, num=e.num.set(x, serial(e.sn))
            )
        return add_stack_incr(x, e)

    def _combine(self, n1: NumMark, n2: NumMark) -> NumMark:
        if self.mutation is Mutation.WRONG_MIN:
            return n1 if n2 < n1 else n2
        return mark_min(n1, n2)

    def dfs1(self, x: int, e: Env, fuel: Optional[int] = None) -> DfsResult:
        self.probe.enter_dfs1(x, e, fuel)
        n0 = serial(e.sn)
        pushed = self._push(x, e)
        n1, e1 = self._dfs(self.order.arrange(self.g.successors(x)), 0, pushed, fuel)
        lower = n1 <= n0 if self.mutation is Mutation.LE_COMPARE else n1 < n0
        if lower:
            self.probe.assertion_point("lower", {"x": x, "e": e, "e1": e1, "n0": n0, "n1": n1})
            if self.mutation is Mutation.FORGET_ADD_BLACK:
                result = DfsResult(n1, e1)
            else:
                self.probe.before_update("add_black", x, e1)
                result = DfsResult(n1, add_black(x, e1))
        else:
            s2, s3 = split(x, e1.stack)
            if self.mutation is Mutation.SPLIT_ONE_SHORT:
                popped = list(s2)
                s2, s3 = plist(popped[:-1]), s3.cons(popped[-1])
            self.probe.assertion_point(
                "pop", {"x": x, "e": e, "e1": e1, "n0": n0, "n1": n1, "s2": s2, "s3": s3}
            )
            num = e1.num if self.mutation is Mutation.SKIP_SET_INFTY else set_infty(s2, e1.num)
            result = DfsResult(
                INFINITY,
                Env(
                    black=e1.black.add(x),
                    gray=e.gray,
                    stack=s3,
                    sccs=e1.sccs.add(frozenset(s2)),
                    sn=e1.sn,
                    num=num,
                ),
            )
        self.probe.exit_dfs1(x, e, result)
        return result

    def dfs(self, roots: Iterable[int], e: Env, fuel: Optional[int] = None) -> DfsResult:
        return self._dfs(self.order.arrange(frozenset(roots)), 0, e, fuel)

    def _dfs(self, roots: Tuple[int, ...], i: int, e: Env, fuel: Optional[int]) -> DfsResult:
        # roots[i:] is the remaining root set, already in choice order.
        remaining = roots[i:]
        self.probe.enter_dfs(remaining, e, fuel)
        if fuel == 0:
            if remaining:
                self.exhausted = True
            result = DfsResult(INFINITY, e)
        elif not remaining:
            result = DfsResult(INFINITY, e)
        else:
            inner = None if fuel is None else fuel - 1
            x = roots[i]
            mark = e.mark(x)
            if not mark.is_unvisited:
                n1, e1 = mark, e
            else:
                n1, e1 = self.dfs1(x, e, inner)
            n2, e2 = self._dfs(roots, i + 1, e1, inner)
            result = DfsResult(self._combine(n1, n2), e2)
        self.probe.exit_dfs(remaining, e, result)
        return result

    def run(self, fuel: Optional[int] = None) -> DfsResult:
        """``dfs`` over every vertex from the initial environment."""
        return self.dfs(self.g.vertices, init_env(self.g), fuel)


def partition_of(e: Env) -> SccPartition:
    return SccPartition(e.sccs)


def fuel_bound(g: Graph) -> int:
    n = g.vertex_count
    return n * (n + 1) + n


# ===== Entry points =====
def dfs1(g: Graph, x: int, e: Env, order: Optional[ChoiceOrder] = None) -> DfsResult:
    return run_deep(Search(g, order).dfs1, x, e)


def dfs(g: Graph, roots: Iterable[int], e: Env, order: Optional[ChoiceOrder] = None) -> DfsResult:
    return run_deep(Search(g, order).dfs, tuple(roots), e)


def tarjan(g: Graph, order: Optional[ChoiceOrder] = None) -> SccPartition:
    _, e = run_deep(Search(g, order).run)
    return partition_of(e)


def tarjan_fueled(g: Graph, fuel: int, order: Optional[ChoiceOrder] = None) -> Optional[SccPartition]:
    """Fuel-bounded run; ``None`` when fuel ran out on a non-empty root set."""
    search = Search(g, order)
    _, e = run_deep(search.run, fuel)
    if search.exhausted:
        logger.warning(f"fuel {fuel} exhausted on a graph with {g.vertex_count} vertices")
        return None
    return partition_of(e)
