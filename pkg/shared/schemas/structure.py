"""Causal structure schemas."""
import enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import Field, field_validator

from shared.schemas.common import BaseSchema

NAME_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"


class SystemKind(str, enum.Enum):
    """Kind of a system node."""
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class System(BaseSchema):
    """A classical random variable or a quantum system."""

    name: str = Field(..., pattern=NAME_PATTERN)
    kind: SystemKind


class Preparation(BaseSchema):
    """Root node: a joint state of one or more systems."""

    systems: FrozenSet[str] = Field(..., min_length=1)


class Operation(BaseSchema):
    """A channel or measurement consuming inputs and producing outputs."""

    name: str = Field(..., pattern=NAME_PATTERN)
    inputs: FrozenSet[str] = Field(..., min_length=1)
    outputs: FrozenSet[str] = Field(..., min_length=1)


class ExclusivityGroup(BaseSchema):
    """Alternative operations on a shared quantum input; at most one is performed."""

    operations: FrozenSet[str] = Field(..., min_length=2)


class MarginalScenario(BaseSchema):
    """Jointly observable contexts."""

    contexts: Tuple[FrozenSet[str], ...] = ()

    @field_validator("contexts")
    @classmethod
    def nonempty_contexts(cls, v):
        for context in v:
            if not context:
                raise ValueError("marginal contexts must be nonempty")
        return v

    def variables(self) -> FrozenSet[str]:
        """Union of all contexts."""
        out = frozenset()
        for context in self.contexts:
            out |= context
        return out


class CausalStructure(BaseSchema):
    """Classical-quantum DAG of systems, preparations and operations."""

    systems: Tuple[System, ...]
    preparations: Tuple[Preparation, ...] = ()
    operations: Tuple[Operation, ...] = ()
    exclusivity_groups: Tuple[ExclusivityGroup, ...] = ()
    marginal_scenario: MarginalScenario = MarginalScenario()

    def system_names(self) -> List[str]:
        """System names in declaration order."""
        return [s.name for s in self.systems]

    def kinds(self) -> Dict[str, SystemKind]:
        """Map system name to kind."""
        return {s.name: SystemKind(s.kind) for s in self.systems}

    def is_quantum(self, name: str) -> bool:
        return self.kinds().get(name) == SystemKind.QUANTUM

    def operation(self, name: str) -> Optional[Operation]:
        for op in self.operations:
            if op.name == name:
                return op
        return None

    def sort_names(self, names) -> Tuple[str, ...]:
        """Sort names by declaration order; unknown names go last, alphabetically."""
        order = {n: i for i, n in enumerate(self.system_names())}
        return tuple(sorted(names, key=lambda n: (order.get(n, len(order)), n)))


class ViolationKind(str, enum.Enum):
    """Rule broken by a structure."""
    DUPLICATE_NAME = "duplicate_name"
    UNDECLARED_SYSTEM = "undeclared_system"
    UNDECLARED_OPERATION = "undeclared_operation"
    DUPLICATE_PRODUCER = "duplicate_producer"
    UNPRODUCED_SYSTEM = "unproduced_system"
    OVERLAPPING_IO = "overlapping_io"
    CYCLE = "cycle"
    NO_CLONING = "no-cloning"
    EXCLUSIVITY = "exclusivity"
    NON_COEXISTING_CONTEXT = "non_coexisting_context"


class Violation(BaseSchema):
    """One validation failure."""

    kind: ViolationKind
    message: str
    systems: Tuple[str, ...] = ()


class ValidationReport(BaseSchema):
    """Outcome of structure validation."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [ViolationKind(v.kind).value for v in self.violations]
