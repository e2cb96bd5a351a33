from .models import (
    FamilyTag,
    Parameter,
    Determinism,
    EdgeOrder,
    FamilySpec,
    GraphMetrics,
    Certificate,
    PairWitness,
    RainbowWitness,
    VerifyReport,
    SearchConfig,
    KDecision,
    SearchStats,
    SolveResult,
    ClaimResult,
    BoundReport,
    Conclusion,
    FiredRule,
    ExtremalClass,
    ExtremalClassification,
    SourceKind,
    SweepJob,
    ClaimCounts,
    MalformedLine,
    SweepRow,
    Violation,
    SweepSummary,
    ErrorResponse,
)

__all__ = [
    "FamilyTag",
    "Parameter",
    "Determinism",
    "EdgeOrder",
    "FamilySpec",
    "GraphMetrics",
    "Certificate",
    "PairWitness",
    "RainbowWitness",
    "VerifyReport",
    "SearchConfig",
    "KDecision",
    "SearchStats",
    "SolveResult",
    "ClaimResult",
    "BoundReport",
    "Conclusion",
    "FiredRule",
    "ExtremalClass",
    "ExtremalClassification",
    "SourceKind",
    "SweepJob",
    "ClaimCounts",
    "MalformedLine",
    "SweepRow",
    "Violation",
    "SweepSummary",
    "ErrorResponse",
]
