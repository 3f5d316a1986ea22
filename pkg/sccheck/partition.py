from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import GraphDomainError


class SccPartition:
    """A set of disjoint vertex sets in canonical form.

    Components are sorted by their least member and members are ascending,
    so two partitions compare equal exactly when they contain the same sets.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Iterable[int]]):
        canonical = [tuple(sorted(set(c))) for c in components]
        canonical.sort(key=lambda c: c[0] if c else -1)
        self.components: Tuple[Tuple[int, ...], ...] = tuple(canonical)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SccPartition):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.components)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
        return f"SccPartition({inner})"

    def lines(self) -> List[str]:
        """One line per component, members separated by spaces."""
        return [" ".join(map(str, c)) for c in self.components]

    def component_of(self) -> Dict[int, int]:
        """Map each vertex to the least member of its component."""
        owner: Dict[int, int] = {}
        for c in self.components:
            for v in c:
                owner[v] = c[0]
        return owner

    def validate(self, vertex_count: int) -> None:
        """Raise unless the components are non-empty, disjoint and cover ``0 .. vertex_count - 1``."""
        seen = set()
        for c in self.components:
            if not c:
                raise GraphDomainError("partition contains an empty component")
            for v in c:
                if not 0 <= v < vertex_count:
                    raise GraphDomainError(f"partition member {v} is not a vertex")
                if v in seen:
                    raise GraphDomainError(f"vertex {v} appears in two components")
                seen.add(v)
        if len(seen) != vertex_count:
            missing = min(set(range(vertex_count)) - seen)
            raise GraphDomainError(f"vertex {missing} is not covered by the partition")

    def relabel(self, labels: List[int]) -> "SccPartition":
        return SccPartition([labels[v] for v in c] for c in self.components)
