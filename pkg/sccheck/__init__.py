"""Executable Tarjan SCC with ghost-state checking."""

from .algorithm import dfs, dfs1, fuel_bound, tarjan, tarjan_fueled
from .fast_scc import tarjan_fast
from .graph import Graph
from .oracle import scc_oracle
from .partition import SccPartition

__all__ = [
    "Graph",
    "SccPartition",
    "dfs",
    "dfs1",
    "fuel_bound",
    "scc_oracle",
    "tarjan",
    "tarjan_fast",
    "tarjan_fueled",
]
