"""Finite directed graphs over dense integer vertex ids, with reachability.

Vertices are ``0 .. vertex_count - 1``. A graph is immutable once built; the
only state it grows afterwards is a per-source cache of reachable sets, which
the checker leans on heavily.
"""

from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import GraphDomainError


class Graph:
    __slots__ = ("_adj", "_succ", "_edge_count", "_reach", "_component")

    def __init__(self, vertex_count: int, successors: Iterable[Iterable[int]]):
        if vertex_count < 0:
            raise GraphDomainError(f"vertex count must be >= 0, got {vertex_count}")
        adj = tuple(tuple(sorted(set(targets))) for targets in successors)
        if len(adj) != vertex_count:
            raise GraphDomainError(
                f"expected {vertex_count} successor sets, got {len(adj)}"
            )
        for v, targets in enumerate(adj):
            if targets and (targets[0] < 0 or targets[-1] >= vertex_count):
                bad = [y for y in targets if not 0 <= y < vertex_count]
                raise GraphDomainError(f"successor {bad[0]} of vertex {v} is not a vertex")
        self._adj: Tuple[Tuple[int, ...], ...] = adj
        self._succ: Tuple[FrozenSet[int], ...] = tuple(frozenset(t) for t in adj)
        self._edge_count = sum(len(t) for t in adj)
        self._reach: Dict[int, FrozenSet[int]] = {}
        self._component: Dict[int, FrozenSet[int]] = {}

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        buckets: List[List[int]] = [[] for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphDomainError(f"edge ({u}, {v}) leaves the vertex range [0, {vertex_count})")
            buckets[u].append(v)
        return cls(vertex_count, buckets)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Iterable[int]], vertex_count: Optional[int] = None) -> "Graph":
        """Build from ``{v: successors}``; vertices missing from the mapping have no successors."""
        if vertex_count is None:
            ids = set(mapping)
            for targets in mapping.values():
                ids.update(targets)
            vertex_count = max(ids) + 1 if ids else 0
        return cls(vertex_count, [mapping.get(v, ()) for v in range(vertex_count)])

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def vertices(self) -> range:
        return range(len(self._adj))

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise GraphDomainError(f"vertex {v} is out of range [0, {len(self._adj)})")

    def successors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self._succ[v]

    def adjacency(self, v: int) -> Tuple[int, ...]:
        """Successors of ``v`` in ascending order."""
        self._check(v)
        return self._adj[v]

    def edge(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return y in self._succ[x]

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, targets in enumerate(self._adj):
            for v in targets:
                yield u, v

    def reach_set(self, x: int) -> FrozenSet[int]:
        """Every vertex reachable from ``x``, ``x`` included (memoized)."""
        self._check(x)
        cached = self._reach.get(x)
        if cached is None:
            seen = {x}
            queue = deque([x])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            cached = self._reach[x] = frozenset(seen)
        return cached

    def reachable(self, x: int, y: int) -> bool:
        self._check(y)
        return y in self.reach_set(x)

    def component(self, x: int) -> FrozenSet[int]:
        """The strongly connected component of ``x`` (memoized)."""
        cached = self._component.get(x)
        if cached is None:
            cached = frozenset(y for y in self.reach_set(x) if x in self.reach_set(y))
            for y in cached:
                self._component[y] = cached
        return cached

    def in_same_scc(self, x: int, y: int) -> bool:
        return self.reachable(x, y) and self.reachable(y, x)

    def is_subscc(self, s: Iterable[int]) -> bool:
        members = frozenset(s)
        return all(members <= self.reach_set(x) for x in members)

    def is_scc(self, s: Iterable[int]) -> bool:
        members = frozenset(s)
        if not members:
            return False
        return self.component(next(iter(members))) == members

    def white_reachable(self, white: Iterable[int], x: int) -> FrozenSet[int]:
        """Vertices reached from ``x`` by walking through white vertices only.

        A walk may leave a vertex only if that vertex is white, so the result
        is ``{x}`` for a non-white ``x``; otherwise it is the white cone of
        ``x`` together with the first non-white vertex of every walk out of
        the cone.
        """
        self._check(x)
        white = white if isinstance(white, (set, frozenset)) else frozenset(white)
        seen = {x}
        if x not in white:
            return frozenset(seen)
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in seen:
                    seen.add(w)
                    if w in white:
                        queue.append(w)
        return frozenset(seen)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


def compact_edges(edges: Iterable[Tuple[int, int]]) -> Tuple[Graph, List[int]]:
    """Relabel arbitrary integer ids to dense ones, keeping ascending id order.

    Returns the graph and ``labels`` with ``labels[dense] == original``.
    """
    pairs = list(edges)
    labels = sorted({u for u, _ in pairs} | {v for _, v in pairs})
    index = {label: i for i, label in enumerate(labels)}
    return Graph.from_edges(len(labels), ((index[u], index[v]) for u, v in pairs)), labels


# Functional spellings of the graph operations.

def successors(g: Graph, v: int) -> FrozenSet[int]:
    return g.successors(v)


def edge(g: Graph, x: int, y: int) -> bool:
    return g.edge(x, y)


def reachable(g: Graph, x: int, y: int) -> bool:
    return g.reachable(x, y)


def white_reachable(g: Graph, white: Iterable[int], x: int) -> FrozenSet[int]:
    return g.white_reachable(white, x)
