"""Iterative index/lowlink Tarjan over flat arrays, and a linear-time benchmark."""

import logging
import math
import time
from typing import Callable, List, Optional, Sequence, Tuple

import pandas as pd

from .errors import GraphDomainError
from .gen import generate
from .graph import Graph
from .models import GraphSpec
from .partition import SccPartition

logger = logging.getLogger(__name__)

UNVISITED = -1


class FastState:
    __slots__ = ("index", "low", "on_stack", "stack", "work", "counter")

    def __init__(self, n: int):
        self.index: List[int] = [UNVISITED] * n
        self.low: List[int] = [0] * n
        self.on_stack = bytearray(n)
        self.stack: List[int] = []
        # (vertex, position of the next successor to look at)
        self.work: List[Tuple[int, int]] = []
        self.counter = 0

    def visit(self, v: int) -> None:
        self.index[v] = self.low[v] = self.counter
        self.counter += 1
        self.stack.append(v)
        self.on_stack[v] = 1
        self.work.append((v, 0))


def tarjan_fast(g: Graph) -> SccPartition:
    n = g.vertex_count
    adj = [g.adjacency(v) for v in g.vertices]
    state = FastState(n)
    index, low, on_stack, stack, work = state.index, state.low, state.on_stack, state.stack, state.work
    components = []
    for root in range(n):
        if index[root] != UNVISITED:
            continue
        state.visit(root)
        while work:
            v, cursor = work[-1]
            targets = adj[v]
            if cursor < len(targets):
                w = targets[cursor]
                work[-1] = (v, cursor + 1)
                if index[w] == UNVISITED:
                    state.visit(w)
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return SccPartition(components)


# ===== Benchmark =====
def spec_family(spec: GraphSpec, deg: Optional[float] = None) -> Callable[[int], Graph]:
    """Graphs of ``spec``'s model at any size; ``deg`` fixes the expected out-degree."""
    return lambda n: generate(spec.with_size(n, deg))


def _validate_sizes(sizes: Sequence[int]) -> None:
    if len(sizes) < 3:
        raise GraphDomainError(f"a doubling benchmark needs at least 3 sizes, got {len(sizes)}")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise GraphDomainError(f"benchmark sizes must be strictly increasing: {list(sizes)}")


def bench_linear(
    family: Callable[[int], Graph],
    sizes: Sequence[int],
    repeats: int = 3,
    solver: Callable[[Graph], SccPartition] = tarjan_fast,
) -> pd.DataFrame:
    """Time ``solver`` at each size (best of ``repeats``) with successive time ratios."""
    _validate_sizes(sizes)
    rows = []
    previous = None
    for size in sizes:
        g = family(size)
        best = math.inf
        for _ in range(max(1, repeats)):
            started = time.perf_counter()
            solver(g)
            best = min(best, time.perf_counter() - started)
        millis = best * 1000.0
        ratio = millis / previous if previous else math.nan
        rows.append({"size": size, "edges": g.edge_count, "millis": millis, "ratio": ratio})
        logger.info(f"bench size={size} edges={g.edge_count} millis={millis:.3f} ratio={ratio:.2f}")
        previous = millis
    return pd.DataFrame(rows, columns=["size", "edges", "millis", "ratio"])


def bench_csv(frame: pd.DataFrame) -> str:
    """``size,edges,millis`` rows with a header line."""
    return frame.to_csv(columns=["size", "edges", "millis"], index=False, float_format="%.3f")
