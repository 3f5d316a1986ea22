import logging
import os
from datetime import datetime, timezone
from typing import List, Optional, Tuple

from fastapi import FastAPI, HTTPException
from starlette.middleware.cors import CORSMiddleware

from . import config
from .algorithm import parse_order, tarjan
from .checker import first_failures, run_checked
from .cli_io import condensation, emit_condensation
from .errors import GraphDomainError, GraphFormatError
from .fast_scc import tarjan_fast
from .gen import generate, parse_spec
from .graph import Graph, compact_edges
from .models import (
    Algo,
    CheckConfig,
    CheckRequest,
    CheckResponse,
    CondensationResponse,
    GenerateRequest,
    GenerateResponse,
    GraphPayload,
    SccRequest,
    SccResponse,
)
from .oracle import scc_oracle
from .partition import SccPartition

logging.basicConfig(level=getattr(logging, config.LOG_LEVEL, logging.INFO))
logger = logging.getLogger(__name__)

app = FastAPI(title="sccheck API")

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# ===== Helpers =====
def _graph_of(payload: GraphPayload, cap: int) -> Tuple[Graph, Optional[List[int]]]:
    """Build the graph; without ``vertex_count`` the ids are compacted and labels returned."""
    if payload.vertex_count is not None:
        if payload.vertex_count > cap:
            raise HTTPException(status_code=413, detail=f"graph has {payload.vertex_count} vertices, limit is {cap}")
        return Graph.from_edges(payload.vertex_count, payload.edges), None
    g, labels = compact_edges(payload.edges)
    if g.vertex_count > cap:
        raise HTTPException(status_code=413, detail=f"graph has {g.vertex_count} vertices, limit is {cap}")
    return g, labels


def _solve(g: Graph, algo: Algo, order: str) -> SccPartition:
    if algo is Algo.FAST:
        return tarjan_fast(g)
    if algo is Algo.ORACLE:
        return scc_oracle(g)
    return tarjan(g, parse_order(order))


def _components(partition: SccPartition, labels: Optional[List[int]]) -> List[List[int]]:
    if labels is not None:
        partition = partition.relabel(labels)
    return [list(c) for c in partition]


# ===== Routes =====
@app.get("/health")
def health_check():
    """Health check endpoint for Render and monitoring services"""
    return {
        "status": "healthy",
        "service": "sccheck",
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


@app.post("/api/sccs", response_model=SccResponse)
def sccs(request: SccRequest):
    try:
        g, labels = _graph_of(request.graph, config.MAX_API_VERTICES)
        partition = _solve(g, request.algo, request.order)
    except (GraphDomainError, GraphFormatError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    logger.info(f"sccs: {g.vertex_count} vertices, {len(partition)} components ({request.algo.value})")
    return SccResponse(algo=request.algo, components=_components(partition, labels), labels=labels)


@app.post("/api/condensation", response_model=CondensationResponse)
def condense(request: SccRequest):
    try:
        g, labels = _graph_of(request.graph, config.MAX_API_VERTICES)
        partition = _solve(g, request.algo, request.order)
        nodes, edges = condensation(g, partition)
        text = emit_condensation(g, partition)
    except (GraphDomainError, GraphFormatError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    if labels is not None:
        nodes = [labels[v] for v in nodes]
        edges = [(labels[a], labels[b]) for a, b in edges]
    return CondensationResponse(text=text, nodes=nodes, edges=edges)


@app.post("/api/check", response_model=CheckResponse)
def check(request: CheckRequest):
    try:
        g, labels = _graph_of(request.graph, config.MAX_CHECKED_VERTICES)
        if not request.suites:
            raise GraphDomainError("at least one check suite must be enabled")
        check_config = CheckConfig(enabled_suites=frozenset(request.suites), fail_mode=request.fail_mode)
        partition, events, summary = run_checked(g, check_config, parse_order(request.order))
    except (GraphDomainError, GraphFormatError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    if not summary.ok:
        logger.warning(f"check: {summary.failed} clause failures on {g.vertex_count} vertices")
    components = _components(partition, labels) if partition is not None else None
    failures = first_failures(events)
    return CheckResponse(components=components, summary=summary, failures=failures)


@app.post("/api/generate", response_model=GenerateResponse)
def generate_graph(request: GenerateRequest):
    try:
        spec = parse_spec(request.spec)
        if spec.n > config.MAX_API_VERTICES:
            raise HTTPException(status_code=413, detail=f"spec asks for {spec.n} vertices, limit is {config.MAX_API_VERTICES}")
        g = generate(spec)
    except (GraphDomainError, GraphFormatError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return GenerateResponse(spec=str(spec), vertex_count=g.vertex_count, edges=list(g.edges()))


if __name__ == "__main__":
    import uvicorn

    port = int(os.environ.get("PORT", 8000))
    uvicorn.run(app, host="0.0.0.0", port=port)
