"""Command line: load or generate a graph, run an SCC implementation, emit results.

Exit status: 0 on success, 1 when a checked clause fails or fuel runs out,
2 on bad input.
"""

import io
import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import typer
from pydantic import ValidationError

from . import config
from .algorithm import fuel_bound, parse_order, tarjan, tarjan_fueled
from .checker import run_checked
from .errors import GraphDomainError, GraphFormatError
from .fast_scc import bench_csv, bench_linear, spec_family, tarjan_fast
from .gen import generate, parse_spec
from .graph import Graph
from .models import Algo, CheckConfig, FailMode
from .oracle import scc_oracle
from .partition import SccPartition
from .trace import replay_trace, write_trace

logger = logging.getLogger(__name__)

DEFAULT_BENCH_SPEC = "gnp:n=16384,deg=8,seed=1"


# ===== Graph files =====
def _edge_list_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _dimacs_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and line.split()[0] != "c":
            lines.append((number, line))
    return lines


def _pair(number: int, parts: Sequence[str]) -> Tuple[int, int]:
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {number}: expected two integers, got {' '.join(parts)!r}") from None


def parse_edge_list(text: str) -> Graph:
    """``n <count>`` then one ``u v`` pair per line; ``#`` starts a comment."""
    lines = _edge_list_lines(text)
    if not lines:
        raise GraphFormatError("empty edge list: missing 'n <count>' header")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise GraphFormatError(f"line {number}: expected 'n <count>', got {header!r}")
    n = int(parts[1])
    edges = []
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {number}: expected 'u v', got {line!r}")
        u, v = _pair(number, parts)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {number}: edge ({u}, {v}) leaves the vertex range [0, {n})")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def parse_dimacs(text: str) -> Graph:
    """``p edge <n> <m>`` header, ``a u v`` arcs with 1-based ids, ``c`` comments."""
    n = m = None
    edges = []
    for number, line in _dimacs_lines(text):
        parts = line.split()
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or not (parts[2].isdigit() and parts[3].isdigit()):
                raise GraphFormatError(f"line {number}: bad problem line {line!r}")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] in ("a", "e"):
            if n is None:
                raise GraphFormatError(f"line {number}: arc before the problem line")
            if len(parts) < 3:
                raise GraphFormatError(f"line {number}: bad arc line {line!r}")
            u, v = _pair(number, parts[1:3])
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {number}: arc ({u}, {v}) leaves the vertex range [1, {n}]")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {number}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge <n> <m>' problem line")
    if len(edges) != m:
        raise GraphFormatError(f"problem line announces {m} arcs, found {len(edges)}")
    return Graph.from_edges(n, edges)


def _is_dimacs(path: Path, text: str) -> bool:
    if path.suffix in (".dimacs", ".gr"):
        return True
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith(("#", "c ")) and stripped != "c":
            return stripped.split()[0] == "p"
    return False


def load_graph(path: Path) -> Graph:
    text = path.read_text()
    g = parse_dimacs(text) if _is_dimacs(path, text) else parse_edge_list(text)
    logger.info(f"loaded {path}: {g.vertex_count} vertices, {g.edge_count} edges")
    return g


# ===== Output =====
def format_sccs(partition: SccPartition) -> str:
    return "".join(line + "\n" for line in partition.lines())


def condensation(g: Graph, partition: SccPartition) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Component ids (least members) and the sorted edges between distinct components."""
    partition.validate(g.vertex_count)
    owner = partition.component_of()
    nodes = [c[0] for c in partition]
    edges = sorted({(owner[u], owner[v]) for u, v in g.edges() if owner[u] != owner[v]})
    return nodes, edges


def emit_condensation(g: Graph, partition: SccPartition) -> str:
    _, edges = condensation(g, partition)
    out = io.StringIO()
    for component in partition:
        out.write(f"C{component[0]}: {' '.join(map(str, component))}\n")
    for a, b in edges:
        out.write(f"C{a} -> C{b}\n")
    return out.getvalue()


# ===== Command =====
class Emit(str, Enum):
    SCCS = "sccs"
    CONDENSATION = "condensation"
    TRACE = "trace"
    BENCH = "bench"


class CliFailMode(str, Enum):
    COLLECT = "collect"
    HALT = "halt"


app = typer.Typer(add_completion=False, help="Strongly connected components with ghost-state checking.")


def _fail(code: int, message: str) -> typer.Exit:
    typer.echo(message, err=True)
    return typer.Exit(code=code)


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text)


def _parse_sizes(text: Optional[str]) -> List[int]:
    if not text:
        return list(config.DEFAULT_BENCH_SIZES)
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise GraphFormatError(f"bad size list {text!r}") from None


def _resolve_fuel(text: Optional[str], g: Graph) -> Optional[int]:
    if text is None:
        return None
    if text == "auto":
        return fuel_bound(g)
    if not text.isdigit():
        raise GraphFormatError(f"fuel must be 'auto' or a natural number, got {text!r}")
    return int(text)


def _bench(gen: Optional[str], sizes: Optional[str], out: Optional[Path]) -> None:
    spec = parse_spec(gen or DEFAULT_BENCH_SPEC)
    deg = spec.p * spec.n if spec.p is not None and spec.n > 0 else None
    frame = bench_linear(spec_family(spec, deg), _parse_sizes(sizes))
    _write(bench_csv(frame), out)


def _solve(
    g: Graph,
    algo: Algo,
    checked: Optional[str],
    order: str,
    emit: Emit,
    fuel: Optional[str],
    out: Optional[Path],
    fail_mode: CliFailMode,
) -> SccPartition:
    choice = parse_order(order)
    fuel_value = _resolve_fuel(fuel, g)
    if algo is Algo.FAST:
        return tarjan_fast(g)
    if algo is Algo.ORACLE:
        return scc_oracle(g)
    if checked is not None or emit is Emit.TRACE:
        mode = FailMode.HALT_ON_FIRST if fail_mode is CliFailMode.HALT else FailMode.COLLECT
        partition, events, summary = run_checked(
            g, CheckConfig.from_text(checked or "all", mode), choice, fuel=fuel_value
        )
        if emit is Emit.TRACE:
            buffer = io.StringIO()
            write_trace(events, buffer)
            _write(buffer.getvalue(), out)
        if summary.fuel_exhausted:
            raise _fail(1, f"fuel exhausted: fuel {fuel_value} ran out before the search finished")
        if not summary.ok:
            first = summary.first_failure
            raise _fail(
                1,
                f"check failed: {first.clause_name}: {first.witness} "
                f"({summary.failed} of {summary.evaluated} clauses failed)",
            )
        return partition
    if fuel_value is not None:
        partition = tarjan_fueled(g, fuel_value, choice)
        if partition is None:
            raise _fail(1, f"fuel exhausted: fuel {fuel_value} ran out before the search finished")
        return partition
    return tarjan(g, choice)


@app.command()
def main(
    input: Optional[Path] = typer.Option(None, "--input", help="Edge list or DIMACS file."),
    gen: Optional[str] = typer.Option(None, "--gen", help="Generator spec, e.g. gnp:n=100,p=0.05,seed=42."),
    algo: Algo = typer.Option(Algo.FUNCTIONAL, "--algo"),
    checked: Optional[str] = typer.Option(None, "--checked", help="'all' or a comma list of check suites."),
    order: str = typer.Option("min", "--order", help="min or seed:<k>."),
    emit: Emit = typer.Option(Emit.SCCS, "--emit"),
    fuel: Optional[str] = typer.Option(None, "--fuel", help="auto or a natural number."),
    out: Optional[Path] = typer.Option(None, "--out"),
    replay: Optional[Path] = typer.Option(None, "--replay", help="Replay a trace file against the graph."),
    sizes: Optional[str] = typer.Option(None, "--sizes", help="Comma list of sizes for --emit bench."),
    fail_mode: CliFailMode = typer.Option(CliFailMode.COLLECT, "--fail-mode"),
    log_level: str = typer.Option(config.LOG_LEVEL, "--log-level"),
):
    logging.basicConfig(level=getattr(logging, log_level.upper(), logging.INFO))
    try:
        if emit is Emit.BENCH:
            ignored = {
                "--input": input is not None,
                "--algo": algo is not Algo.FUNCTIONAL,
                "--checked": checked is not None,
                "--order": order != "min",
                "--fuel": fuel is not None,
                "--replay": replay is not None,
            }
            rejected = [name for name, given in ignored.items() if given]
            if rejected:
                raise _fail(2, f"--emit bench takes only --gen, --sizes and --out, not {', '.join(rejected)}")
            _bench(gen, sizes, out)
            return
        if (input is None) == (gen is None):
            raise _fail(2, "give exactly one of --input and --gen")
        if algo is not Algo.FUNCTIONAL and (checked is not None or emit is Emit.TRACE or fuel is not None):
            raise _fail(2, "--checked, --fuel and --emit trace need --algo functional")
        g = load_graph(input) if input is not None else generate(gen)

        if replay is not None:
            summary = replay_trace(g, replay.read_text().splitlines())
            if not summary.ok:
                first = summary.first_failure
                raise _fail(1, f"replay failed: {first.clause_name}: {first.witness}")
            typer.echo(f"replay ok: {summary.evaluated} clauses", err=True)
            return

        partition = _solve(g, algo, checked, order, emit, fuel, out, fail_mode)
        if emit is Emit.SCCS:
            _write(format_sccs(partition), out)
        elif emit is Emit.CONDENSATION:
            _write(emit_condensation(g, partition), out)
    except (GraphFormatError, GraphDomainError, ValidationError, OSError) as exc:
        raise _fail(2, f"error: {exc}")
