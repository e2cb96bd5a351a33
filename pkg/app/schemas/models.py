from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator


class FamilyTag(str, Enum):
    """Named graph families the generators know."""
    COMPLETE = "complete"
    PATH = "path"
    CYCLE = "cycle"
    WHEEL = "wheel"
    COMPLETE_BIPARTITE = "complete_bipartite"
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    CLIQUE_PRODUCT = "clique_product"
    G_KT = "g_kt"
    G_11 = "g_11"
    Z2 = "z2"
    F8 = "f8"
    F_N = "f_n"
    G6_1 = "g6_1"
    G6_2 = "g6_2"
    G6_3 = "g6_3"
    H_PRIME = "h_prime"
    H_DOUBLE_PRIME = "h_double_prime"
    PETERSEN = "petersen"


class Parameter(str, Enum):
    """Graph parameters the exact solvers compute."""
    CHI_PRIME = "chi_prime"
    RC = "rc"
    PRC = "prc"


class Determinism(str, Enum):
    SEQUENTIAL = "sequential-canonical"
    PARALLEL = "parallel-value-only"


class EdgeOrder(str, Enum):
    DEGREE_SUM = "degree-sum"
    CANONICAL = "canonical"


class FamilySpec(BaseModel):
    """A named family plus its integer parameters, e.g. ``wheel:7``."""
    model_config = ConfigDict(frozen=True)

    tag: FamilyTag
    params: tuple[int, ...] = Field(default_factory=tuple)

    def __str__(self) -> str:
        if not self.params:
            return self.tag.value
        return f"{self.tag.value}:{','.join(str(p) for p in self.params)}"


class GraphMetrics(BaseModel):
    """Exact invariants of one graph. ``diameter`` is None when disconnected."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    max_degree: int
    min_degree: int
    average_degree: Fraction
    diameter: Optional[int]
    clique_number: Optional[int] = None
    is_connected: bool
    is_bipartite: bool
    is_overfull: bool
    girth: Optional[int] = Field(default=None, description="None when the graph has no cycle")

    @field_serializer("average_degree")
    def _serialize_fraction(self, value: Fraction) -> str:
        return str(value)


class Certificate(BaseModel):
    """Wire form of an edge colouring: ``{"n", "edges": [[u, v, colour]], "k"}``."""
    n: int = Field(ge=0)
    edges: list[tuple[int, int, int]] = Field(default_factory=list)
    k: int = Field(ge=0)


class PairWitness(BaseModel):
    u: int
    v: int
    path: Optional[list[int]] = Field(default=None, description="None marks an unwitnessed pair")


class RainbowWitness(BaseModel):
    """One rainbow path (or an explicit none) per checked vertex pair."""
    pairs: list[PairWitness] = Field(default_factory=list)

    def path_for(self, u: int, v: int) -> Optional[list[int]]:
        a, b = min(u, v), max(u, v)
        for pair in self.pairs:
            if pair.u == a and pair.v == b:
                return pair.path
        raise KeyError((u, v))


class VerifyReport(BaseModel):
    is_proper: bool
    proper_violation: Optional[tuple[tuple[int, int], tuple[int, int]]] = None
    is_rainbow_connected: bool
    unwitnessed_pair: Optional[tuple[int, int]] = None
    is_prc_certificate: bool
    colours_used: int
    k: int
    witness: Optional[RainbowWitness] = None

    @model_validator(mode="after")
    def _prc_is_conjunction(self) -> "VerifyReport":
        if self.is_prc_certificate != (self.is_proper and self.is_rainbow_connected):
            raise ValueError("is_prc_certificate must equal is_proper and is_rainbow_connected")
        return self


class SearchConfig(BaseModel):
    """Knobs for the exact backtracking solvers."""
    node_budget: int = Field(default=100_000_000, gt=0)
    time_budget: float = Field(default=60.0, gt=0)
    colour_cap: int = Field(default=24, gt=0)
    symmetry_breaking: bool = True
    edge_order: EdgeOrder = EdgeOrder.DEGREE_SUM
    determinism: Determinism = Determinism.SEQUENTIAL
    rainbow_pruning: bool = False
    workers: int = Field(default=1, gt=0)

    @classmethod
    def from_settings(cls, settings: Any, **overrides: Any) -> "SearchConfig":
        values = settings.search_overrides()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


class KDecision(BaseModel):
    k: int
    feasible: Optional[bool] = Field(description="None when the budget ran out before a decision")
    nodes: int = 0


class SearchStats(BaseModel):
    nodes: int = 0
    elapsed_seconds: float = 0.0
    lower_bound: int = 0
    upper_bound: int = 0
    decisions: list[KDecision] = Field(default_factory=list)


class SolveResult(BaseModel):
    parameter: Parameter
    value: Optional[int] = Field(description="Optimum when exact, best known upper bound otherwise")
    certificate: Optional[Certificate] = None
    stats: SearchStats = Field(default_factory=SearchStats)
    exact: bool = True


class ClaimResult(BaseModel):
    claim: str
    applicable: bool
    satisfied: Optional[bool] = Field(default=None, description="None means n/a")
    details: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _na_when_not_applicable(self) -> "ClaimResult":
        if not self.applicable and self.satisfied is not None:
            raise ValueError(f"claim {self.claim}: not applicable but satisfied={self.satisfied}")
        return self

    @property
    def status(self) -> str:
        if self.satisfied is None:
            return "na"
        return "pass" if self.satisfied else "fail"


class BoundReport(BaseModel):
    n: int
    m: int
    chi_prime: Optional[int] = None
    rc: Optional[int] = None
    prc: Optional[int] = None
    claims: dict[str, ClaimResult] = Field(default_factory=dict)

    def violations(self) -> list[str]:
        return [claim_id for claim_id, result in self.claims.items() if result.satisfied is False]


class Conclusion(str, Enum):
    PRC_EQ_CHI = "prc_eq_chi"
    PRC_EQ_CHI_OR_EXCEPTION = "prc_eq_chi_or_exception"
    PRC_EQ_RC = "prc_eq_rc"
    CHI_EQ_DELTA = "chi_eq_delta"


class FiredRule(BaseModel):
    rule: str
    conclusion: Conclusion
    predicted_value: Optional[int] = None
    details: dict[str, Any] = Field(default_factory=dict)


class ExtremalClass(str, Enum):
    PRC_EQ_M = "prc_eq_m"
    PRC_EQ_M_MINUS_1 = "prc_eq_m_minus_1"
    NEITHER = "neither"


class ExtremalClassification(BaseModel):
    predicted: ExtremalClass
    structure: Optional[str] = Field(default=None, description="tree, triangle, h_prime or h_double_prime")
    observed: Optional[ExtremalClass] = None
    consistent: Optional[bool] = None


class SourceKind(str, Enum):
    GRAPH6 = "graph6"
    FAMILY = "family"
    RANDOM = "random"


class SweepJob(BaseModel):
    """One sweep: where graphs come from, what to check, where to write."""
    source_kind: SourceKind
    source: str
    claims: list[str] = Field(default_factory=list, description="Empty means every claim")
    node_budget: int = Field(default=100_000_000, gt=0)
    time_budget: float = Field(default=60.0, gt=0)
    colour_cap: int = Field(default=24, gt=0)
    output_dir: str = "outputs"
    jobs: int = Field(default=1, gt=0)
    seed: int = 20240607
    oracle: bool = False
    determinism: Determinism = Determinism.PARALLEL
    resume: bool = False


class ClaimCounts(BaseModel):
    passed: int = 0
    failed: int = 0
    na: int = 0

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.na


class MalformedLine(BaseModel):
    index: int
    text: str
    error: str


class SweepRow(BaseModel):
    """Per-graph sweep record; also the journal line format."""
    index: int
    graph6: str
    n: int
    m: int
    chi_prime: Optional[int] = None
    rc: Optional[int] = None
    prc: Optional[int] = None
    exact: bool = True
    claim_status: dict[str, str] = Field(default_factory=dict)
    violated: list[str] = Field(default_factory=list)
    certificates: dict[str, Certificate] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)


class Violation(BaseModel):
    index: int
    graph6: str
    claims: list[str]
    details: dict[str, Any] = Field(default_factory=dict)
    certificates: dict[str, Certificate] = Field(default_factory=dict)
    reproduce: str


class SweepSummary(BaseModel):
    source: str
    seed: int
    processed: int = 0
    inexact: int = 0
    malformed: list[MalformedLine] = Field(default_factory=list)
    claims: dict[str, ClaimCounts] = Field(default_factory=dict)
    violations: list[Violation] = Field(default_factory=list)
    wall_time_seconds: float = 0.0


class ErrorResponse(BaseModel):
    """Error body printed by the CLI."""
    success: bool = False
    error: str
    detail: Optional[str] = None
