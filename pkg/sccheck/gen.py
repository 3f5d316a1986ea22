"""Seeded random digraphs.

The generator is specified by its recurrence so that any implementation
reproduces the same graphs from the same spec:

* seeding: ``state = splitmix64(seed)`` (forced non-zero);
* each draw: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27``, output
  ``x * 0x2545F4914F6CDD1D`` (xorshift64*), all modulo 2**64;
* a uniform double is ``(out >> 11) * 2**-53``.

``gnp`` and ``dag`` walk their ordered candidate pairs with geometric skips,
``skip = floor(log(1 - u) / log(1 - p))``, so sparse graphs cost time linear
in their size.
"""

import logging
import math
from typing import Iterator, List, Tuple, Union

from pydantic import ValidationError

from .errors import GraphDomainError, GraphFormatError
from .graph import Graph
from .models import GraphModel, GraphSpec

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


def splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Xorshift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


# ===== Spec strings =====
_INT_KEYS = ("n", "k", "seed", "loops")
_FLOAT_KEYS = ("p", "deg")


def parse_spec(text: str) -> GraphSpec:
    """Parse ``model:key=value,...``, e.g. ``gnp:n=100,p=0.05,seed=42``."""
    model, sep, rest = text.strip().partition(":")
    if not sep:
        raise GraphFormatError(f"graph spec {text!r} lacks 'model:' prefix")
    if model not in {m.value for m in GraphModel}:
        raise GraphFormatError(f"unknown graph model {model!r}")
    values = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in _INT_KEYS + _FLOAT_KEYS:
            raise GraphFormatError(f"bad graph spec field {item!r}")
        try:
            values[key] = int(raw) if key in _INT_KEYS else float(raw)
        except ValueError:
            raise GraphFormatError(f"bad value for {key}: {raw!r}") from None
    if "n" not in values:
        raise GraphFormatError(f"graph spec {text!r} needs n")
    deg = values.pop("deg", None)
    if deg is not None:
        if "p" in values:
            raise GraphFormatError("give either p or deg, not both")
        n = values["n"]
        values["p"] = min(1.0, deg / n) if n > 0 else 0.0
    values["loops"] = bool(values.get("loops", 0))
    try:
        return GraphSpec(model=model, **values)
    except ValidationError as exc:
        raise GraphDomainError(f"invalid graph spec {text!r}: {exc.errors()[0]['msg']}") from exc


# ===== Models =====
def _geometric(rng: Xorshift64Star, p: float, row_lengths: List[int]) -> Iterator[Tuple[int, int]]:
    """Yield ``(row, offset)`` for every candidate kept with probability ``p``."""
    if p <= 0.0:
        return
    log_q = math.log1p(-p) if p < 1.0 else -math.inf
    row, offset = 0, -1
    rows = len(row_lengths)
    while True:
        offset += 1 + int(math.floor(math.log(1.0 - rng.random()) / log_q))
        while row < rows and offset >= row_lengths[row]:
            offset -= row_lengths[row]
            row += 1
        if row >= rows:
            return
        yield row, offset


def _gnp(spec: GraphSpec, rng: Xorshift64Star) -> Iterator[Tuple[int, int]]:
    n = spec.n
    width = n if spec.loops else n - 1
    for u, offset in _geometric(rng, spec.p, [max(width, 0)] * n):
        if spec.loops:
            yield u, offset
        else:
            yield u, offset if offset < u else offset + 1


def _dag(spec: GraphSpec, rng: Xorshift64Star) -> Iterator[Tuple[int, int]]:
    n = spec.n
    for u, offset in _geometric(rng, spec.p, [n - 1 - u for u in range(n)]):
        yield u, u + 1 + offset


def _cycle_chain(spec: GraphSpec) -> Iterator[Tuple[int, int]]:
    n, k = spec.n, spec.k
    if n == 0:
        return
    base, extra = divmod(n, k)
    starts = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        starts.append(start)
        if size > 1:
            for v in range(start, start + size - 1):
                yield v, v + 1
            yield start + size - 1, start
        start += size
    for a, b in zip(starts, starts[1:]):
        yield a, b


def _complete(spec: GraphSpec) -> Iterator[Tuple[int, int]]:
    for u in range(spec.n):
        for v in range(spec.n):
            if u != v or spec.loops:
                yield u, v


def generate(spec: Union[GraphSpec, str]) -> Graph:
    """The graph described by ``spec``; equal specs give identical graphs."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    rng = Xorshift64Star(spec.seed)
    if spec.model is GraphModel.GNP:
        edges = _gnp(spec, rng)
    elif spec.model is GraphModel.DAG:
        edges = _dag(spec, rng)
    elif spec.model is GraphModel.CYCLE_CHAIN:
        edges = _cycle_chain(spec)
    elif spec.model is GraphModel.COMPLETE:
        edges = _complete(spec)
    else:
        edges = iter(())
    g = Graph.from_edges(spec.n, edges)
    logger.debug(f"generated {spec}: {g.vertex_count} vertices, {g.edge_count} edges")
    return g
