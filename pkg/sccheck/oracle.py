"""Brute-force SCC ground truth for differential testing.

Nothing here is shared with the Tarjan implementations: mutual reachability is
recomputed from scratch with one breadth-first search per vertex.
"""

from collections import deque
from typing import Iterable, List, Set

import numpy as np

from .graph import Graph
from .partition import SccPartition

__all__ = [
    "SccPartition",
    "forward_closure",
    "in_same_scc",
    "is_scc",
    "is_subscc",
    "scc_oracle",
    "transitive_closure",
]


def _bfs(g: Graph, source: int) -> Set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def forward_closure(g: Graph) -> List[Set[int]]:
    """``closure[x]`` is the set of vertices reachable from ``x`` (reflexive)."""
    return [_bfs(g, x) for x in g.vertices]


def transitive_closure(g: Graph) -> np.ndarray:
    """Reflexive-transitive closure as a boolean matrix, by repeated squaring."""
    n = g.vertex_count
    reach = np.eye(n, dtype=bool)
    for u, v in g.edges():
        reach[u, v] = True
    if n == 0:
        return reach
    steps = 1
    while steps < n:
        squared = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
        if np.array_equal(squared, reach):
            break
        reach = squared
        steps *= 2
    return reach


def in_same_scc(g: Graph, x: int, y: int) -> bool:
    return y in _bfs(g, x) and x in _bfs(g, y)


def is_subscc(g: Graph, s: Iterable[int]) -> bool:
    members = set(s)
    return all(members <= _bfs(g, x) for x in members)


def is_scc(g: Graph, s: Iterable[int]) -> bool:
    """Non-empty, pairwise mutually reachable, and no outside vertex joins it."""
    members = set(s)
    if not members:
        return False
    anchor = next(iter(members))
    forward = _bfs(g, anchor)
    if not members <= forward:
        return False
    for x in members:
        if anchor not in _bfs(g, x):
            return False
    # Maximality: every vertex mutually reachable with the anchor is a member.
    for y in forward - members:
        if anchor in _bfs(g, y):
            return False
    return True


def scc_oracle(g: Graph) -> SccPartition:
    closure = forward_closure(g)
    assigned = [False] * g.vertex_count
    components = []
    for x in g.vertices:
        if assigned[x]:
            continue
        component = [y for y in closure[x] if x in closure[y]]
        for y in component:
            assigned[y] = True
        components.append(component)
    return SccPartition(components)
