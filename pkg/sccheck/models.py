from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ===== Check Models =====
class CheckReport(BaseModel):
    """Outcome of evaluating one named clause against a state or a transition."""

    model_config = ConfigDict(frozen=True)

    clause_name: str
    holds: bool
    witness: Optional[str] = None

    @model_validator(mode="after")
    def _witness_iff_failed(self):
        if self.holds and self.witness is not None:
            raise ValueError(f"clause {self.clause_name} holds but carries a witness")
        if not self.holds and not self.witness:
            raise ValueError(f"clause {self.clause_name} fails without a witness")
        return self

    @classmethod
    def ok(cls, clause_name: str) -> "CheckReport":
        return cls(clause_name=clause_name, holds=True)

    @classmethod
    def fail(cls, clause_name: str, witness: str) -> "CheckReport":
        return cls(clause_name=clause_name, holds=False, witness=witness)

    @classmethod
    def of(cls, clause_name: str, holds: bool, witness: str) -> "CheckReport":
        return cls.ok(clause_name) if holds else cls.fail(clause_name, witness)

    def __str__(self) -> str:
        if self.holds:
            return f"{self.clause_name}: ok"
        return f"{self.clause_name}: FAILED ({self.witness})"


class Suite(str, Enum):
    PRECONDITIONS = "preconditions"
    POSTCONDITIONS = "postconditions"
    ASSERTIONS = "assertions"
    WF_ENV_EACH_STEP = "wf_env_each_step"
    MEASURES = "measures"
    FUEL_BOUND = "fuel_bound"
    COQ_POST = "coq_post"


class FailMode(str, Enum):
    COLLECT = "collect"
    HALT_ON_FIRST = "halt_on_first"


class CheckConfig(BaseModel):
    enabled_suites: FrozenSet[Suite] = Field(default_factory=lambda: frozenset(Suite))
    fail_mode: FailMode = FailMode.COLLECT

    @field_validator("enabled_suites")
    @classmethod
    def _at_least_one(cls, value):
        if not value:
            raise ValueError("at least one check suite must be enabled")
        return value

    @classmethod
    def from_text(cls, suites: str, fail_mode: FailMode = FailMode.COLLECT) -> "CheckConfig":
        """Build a config from ``all`` or a comma-separated list of suite names."""
        text = suites.strip()
        if text in ("", "all"):
            return cls(fail_mode=fail_mode)
        return cls(
            enabled_suites=[part.strip() for part in text.split(",") if part.strip()],
            fail_mode=fail_mode,
        )

    def has(self, suite: Suite) -> bool:
        return suite in self.enabled_suites


class CheckSummary(BaseModel):
    evaluated: int = 0
    failed: int = 0
    failures_by_clause: Dict[str, int] = Field(default_factory=dict)
    first_failure: Optional[CheckReport] = None
    halted: bool = False
    fuel_exhausted: bool = False

    @property
    def ok(self) -> bool:
        return self.failed == 0 and not self.fuel_exhausted

    def record(self, report: CheckReport) -> None:
        self.evaluated += 1
        if not report.holds:
            self.failed += 1
            self.failures_by_clause[report.clause_name] = (
                self.failures_by_clause.get(report.clause_name, 0) + 1
            )
            if self.first_failure is None:
                self.first_failure = report


# ===== Generator Models =====
class GraphModel(str, Enum):
    GNP = "gnp"
    DAG = "dag"
    CYCLE_CHAIN = "cycle_chain"
    COMPLETE = "complete"
    EMPTY = "empty"


class GraphSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: GraphModel
    n: int = Field(ge=0)
    p: Optional[float] = None
    k: Optional[int] = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    loops: bool = False

    @field_validator("p")
    @classmethod
    def _probability(cls, value):
        if value is not None and not 0.0 <= value <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {value}")
        return value

    @model_validator(mode="after")
    def _model_parameters(self):
        if self.model in (GraphModel.GNP, GraphModel.DAG) and self.p is None:
            raise ValueError(f"model {self.model.value} needs a probability p")
        if self.model is GraphModel.CYCLE_CHAIN:
            if self.k is None or self.k < 1:
                raise ValueError("cycle_chain needs k >= 1")
            if self.n > 0 and self.k > self.n:
                raise ValueError(f"cycle_chain needs k <= n, got k={self.k} n={self.n}")
        return self

    def with_size(self, n: int, deg: Optional[float] = None) -> "GraphSpec":
        """Same family at another size; ``deg`` keeps the expected out-degree fixed."""
        p = self.p
        if deg is not None:
            p = min(1.0, deg / n) if n > 0 else 0.0
        return self.model_copy(update={"n": n, "p": p})

    def __str__(self) -> str:
        parts = [f"n={self.n}"]
        if self.p is not None:
            parts.append(f"p={self.p:g}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        parts.append(f"seed={self.seed}")
        if self.loops:
            parts.append("loops=1")
        return f"{self.model.value}:" + ",".join(parts)


# ===== API Models =====
class Algo(str, Enum):
    FUNCTIONAL = "functional"
    FAST = "fast"
    ORACLE = "oracle"


class GraphPayload(BaseModel):
    vertex_count: Optional[int] = Field(default=None, ge=0)
    edges: List[Tuple[int, int]] = Field(default_factory=list)


class SccRequest(BaseModel):
    graph: GraphPayload
    algo: Algo = Algo.FUNCTIONAL
    order: str = "min"


class SccResponse(BaseModel):
    algo: Algo
    components: List[List[int]]
    labels: Optional[List[int]] = None


class CondensationResponse(BaseModel):
    text: str
    nodes: List[int]
    edges: List[Tuple[int, int]]


class CheckRequest(BaseModel):
    graph: GraphPayload
    suites: List[Suite] = Field(default_factory=lambda: list(Suite))
    fail_mode: FailMode = FailMode.COLLECT
    order: str = "min"


class CheckResponse(BaseModel):
    components: Optional[List[List[int]]] = None
    summary: CheckSummary
    failures: List[CheckReport] = Field(default_factory=list)


class GenerateRequest(BaseModel):
    spec: str


class GenerateResponse(BaseModel):
    spec: str
    vertex_count: int
    edges: List[Tuple[int, int]]
