"""Pydantic schemas exports."""
from shared.schemas.common import BaseSchema, to_fraction
from shared.schemas.structure import (
    SystemKind,
    System,
    Preparation,
    Operation,
    ExclusivityGroup,
    MarginalScenario,
    CausalStructure,
    ViolationKind,
    Violation,
    ValidationReport,
)
from shared.schemas.constraint import (
    SubsetIndex,
    Relation,
    Provenance,
    ConstraintRow,
    ConstraintSystem,
    MarginalConeReport,
)
from shared.schemas.polyhedron import Ray, ConeVRep
from shared.schemas.certificate import (
    LinearExpression,
    Candidate,
    Verdict,
    Certificate,
    ProjectionCertificate,
)
from shared.schemas.distribution import (
    JointDistribution,
    Box,
    EntropyVector,
    ScanRow,
    ScanResult,
)
from shared.schemas.network import SourceSpec, ResponseSpec, NetworkSpec
from shared.schemas.inequality import InequalityId, NamedInequality, OrbitReport

__all__ = [
    # Common
    "BaseSchema",
    "to_fraction",
    # Structure
    "SystemKind",
    "System",
    "Preparation",
    "Operation",
    "ExclusivityGroup",
    "MarginalScenario",
    "CausalStructure",
    "ViolationKind",
    "Violation",
    "ValidationReport",
    # Constraints
    "SubsetIndex",
    "Relation",
    "Provenance",
    "ConstraintRow",
    "ConstraintSystem",
    "MarginalConeReport",
    # Polyhedron
    "Ray",
    "ConeVRep",
    # Certificates
    "LinearExpression",
    "Candidate",
    "Verdict",
    "Certificate",
    "ProjectionCertificate",
    # Distributions
    "JointDistribution",
    "Box",
    "EntropyVector",
    "ScanRow",
    "ScanResult",
    # Networks
    "SourceSpec",
    "ResponseSpec",
    "NetworkSpec",
    # Inequalities
    "InequalityId",
    "NamedInequality",
    "OrbitReport",
]
