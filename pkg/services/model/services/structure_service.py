"""Causal structure validation, coexistence and coordinate lattice."""
import itertools
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from shared.schemas.constraint import SubsetIndex
from shared.schemas.structure import (
    CausalStructure,
    MarginalScenario,
    Operation,
    Preparation,
    System,
    SystemKind,
    ValidationReport,
    Violation,
    ViolationKind,
)
from shared.utils.exceptions import CoordinateError, ValidationError
from shared.utils.helpers import iter_submasks, join_names
from shared.utils.logger import get_logger

logger = get_logger(__name__)

# Violations after which graph-based checks are meaningless.
_BLOCKING = {
    ViolationKind.DUPLICATE_NAME,
    ViolationKind.UNDECLARED_SYSTEM,
    ViolationKind.UNDECLARED_OPERATION,
    ViolationKind.DUPLICATE_PRODUCER,
    ViolationKind.CYCLE,
}


class StructureService:
    """Service for graph queries on one causal structure."""

    def __init__(self, structure: CausalStructure):
        self.structure = structure
        self.names = structure.system_names()
        self.kinds = structure.kinds()
        self._position = {n: i for i, n in enumerate(self.names)}

    # ------------------------------------------------------------------
    # Graph
    # ------------------------------------------------------------------

    @cached_property
    def graph(self) -> nx.DiGraph:
        """System-level DAG: one edge per (input, output) of every operation."""
        g = nx.DiGraph()
        g.add_nodes_from(self.names)
        for op in self.structure.operations:
            for source in op.inputs:
                for target in op.outputs:
                    g.add_edge(source, target, operation=op.name)
        return g

    @cached_property
    def producers(self) -> Dict[str, str]:
        """Map system -> producing operation name, or "" for preparations."""
        out: Dict[str, str] = {}
        for prep in self.structure.preparations:
            for s in prep.systems:
                out.setdefault(s, "")
        for op in self.structure.operations:
            for s in op.outputs:
                out.setdefault(s, op.name)
        return out

    @cached_property
    def _descendants(self) -> Dict[str, FrozenSet[str]]:
        return {n: frozenset(nx.descendants(self.graph, n)) for n in self.graph.nodes}

    def descendants(self, name: str) -> Set[str]:
        """Strict descendants of a system."""
        return set(self._descendants[name])

    def ancestors(self, name: str) -> Set[str]:
        return set(nx.ancestors(self.graph, name))

    @cached_property
    def ancestor_operations(self) -> Dict[str, FrozenSet[str]]:
        """Operations on the ancestry of each system (its producer included)."""
        out = {}
        for name in self.names:
            ops = set()
            for s in self.ancestors(name) | {name}:
                producer = self.producers.get(s)
                if producer:
                    ops.add(producer)
            out[name] = frozenset(ops)
        return out

    def consumers(self, name: str) -> List[str]:
        return [op.name for op in self.structure.operations if name in op.inputs]

    # ------------------------------------------------------------------
    # Coexistence
    # ------------------------------------------------------------------

    def _group_conflict(self, left: FrozenSet[str], right: FrozenSet[str]) -> bool:
        for group in self.structure.exclusivity_groups:
            a = left & group.operations
            b = right & group.operations
            if a and b and (len(a | b) > 1):
                return True
        return False

    @cached_property
    def self_conflicting(self) -> Set[str]:
        """Systems whose ancestry passes through two alternatives of one group."""
        out = set()
        for name in self.names:
            ops = self.ancestor_operations[name]
            for group in self.structure.exclusivity_groups:
                if len(ops & group.operations) > 1:
                    out.add(name)
        return out

    def conflict(self, u: str, v: str) -> bool:
        """True if two distinct systems can never be held jointly."""
        if self.kinds[u] == SystemKind.QUANTUM and v in self._descendants[u]:
            return True
        if self.kinds[v] == SystemKind.QUANTUM and u in self._descendants[v]:
            return True
        return self._group_conflict(self.ancestor_operations[u], self.ancestor_operations[v])

    def is_coexisting(self, names: Iterable[str]) -> bool:
        members = list(dict.fromkeys(names))
        if any(n in self.self_conflicting for n in members):
            return False
        return not any(self.conflict(u, v) for u, v in itertools.combinations(members, 2))

    def _canonical(self, members: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(members, key=self._position.__getitem__))

    @cached_property
    def coexisting_sets(self) -> List[Tuple[str, ...]]:
        """
        Maximal coexisting sets in canonical order.

        Coexistence is a pairwise relation, so the maximal sets are the maximal
        cliques of the compatibility graph. Order: larger sets first, then by
        the declaration positions of their members.
        """
        compatible = nx.Graph()
        usable = [n for n in self.names if n not in self.self_conflicting]
        compatible.add_nodes_from(usable)
        for u, v in itertools.combinations(usable, 2):
            if not self.conflict(u, v):
                compatible.add_edge(u, v)
        cliques = [self._canonical(c) for c in nx.find_cliques(compatible)] if usable else []
        cliques.sort(key=lambda c: (-len(c), [self._position[n] for n in c]))
        logger.debug("Coexisting sets computed", systems=len(self.names), maximal=len(cliques))
        return cliques

    # ------------------------------------------------------------------
    # Coordinates
    # ------------------------------------------------------------------

    def mask_of(self, names: Iterable[str]) -> int:
        n = len(self.names)
        mask = 0
        for name in names:
            mask |= 1 << (n - 1 - self._position[name])
        return mask

    def subset_coordinates(self) -> SubsetIndex:
        """Every nonempty subset of a maximal coexisting set."""
        masks: Set[int] = set()
        for members in self.coexisting_sets:
            masks.update(m for m in iter_submasks(self.mask_of(members)) if m)
        return SubsetIndex.from_masks(self.names, masks)

    def marginal_index(self, scenario: Optional[MarginalScenario] = None) -> SubsetIndex:
        """Coordinates of a marginal scenario, over its own variables."""
        scenario = scenario or self.structure.marginal_scenario
        variables = self.structure.sort_names(scenario.variables())
        unknown = [v for v in variables if v not in self._position]
        if unknown:
            raise ValidationError(f"Unknown marginal variables: {join_names(unknown)}", field="marginal")
        n = len(variables)
        bit = {name: 1 << (n - 1 - k) for k, name in enumerate(variables)}
        masks: Set[int] = set()
        for context in scenario.contexts:
            if not self.is_coexisting(context):
                subset = self.structure.sort_names(context)
                raise CoordinateError(
                    f"Marginal context {{{join_names(subset)}}} is not coexisting", subset=subset
                )
            full = 0
            for name in context:
                full |= bit[name]
            masks.update(m for m in iter_submasks(full) if m)
        return SubsetIndex.from_masks(variables, masks)

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Collect every rule violation of the structure."""
        violations: List[Violation] = []
        s = self.structure

        def add(kind: ViolationKind, message: str, systems: Iterable[str] = ()):
            violations.append(Violation(kind=kind, message=message, systems=tuple(systems)))

        seen: Set[str] = set()
        for name in self.names:
            if name in seen:
                add(ViolationKind.DUPLICATE_NAME, f"System '{name}' declared twice", [name])
            seen.add(name)
        op_names = [op.name for op in s.operations]
        for name in sorted({n for n in op_names if op_names.count(n) > 1}):
            add(ViolationKind.DUPLICATE_NAME, f"Operation '{name}' declared twice", [])
        if set(op_names) & seen:
            for name in sorted(set(op_names) & seen):
                add(ViolationKind.DUPLICATE_NAME, f"'{name}' names both a system and an operation", [name])

        declared = set(self.names)

        def check_declared(names: Iterable[str], where: str):
            for name in sorted(set(names) - declared):
                add(ViolationKind.UNDECLARED_SYSTEM, f"Undeclared system '{name}' in {where}", [name])

        for prep in s.preparations:
            check_declared(prep.systems, "preparation")
        for op in s.operations:
            check_declared(op.inputs | op.outputs, f"operation '{op.name}'")
        for context in s.marginal_scenario.contexts:
            check_declared(context, "marginal scenario")
        for group in s.exclusivity_groups:
            for name in sorted(group.operations - set(op_names)):
                add(ViolationKind.UNDECLARED_OPERATION, f"Undeclared operation '{name}' in exclusivity group")

        produced: Dict[str, int] = {}
        for prep in s.preparations:
            for name in prep.systems:
                produced[name] = produced.get(name, 0) + 1
        for op in s.operations:
            for name in op.outputs:
                produced[name] = produced.get(name, 0) + 1
        for name in self.names:
            count = produced.get(name, 0)
            if count > 1:
                add(ViolationKind.DUPLICATE_PRODUCER, f"System '{name}' is produced {count} times", [name])
            elif count == 0:
                add(ViolationKind.UNPRODUCED_SYSTEM, f"System '{name}' is never produced", [name])

        for op in s.operations:
            overlap = op.inputs & op.outputs
            if overlap:
                add(
                    ViolationKind.OVERLAPPING_IO,
                    f"Operation '{op.name}' uses {join_names(sorted(overlap))} as input and output",
                    sorted(overlap),
                )

        if any(ViolationKind(v.kind) in _BLOCKING for v in violations):
            return ValidationReport(violations=tuple(violations))

        if not nx.is_directed_acyclic_graph(self.graph):
            cycle = nx.find_cycle(self.graph)
            members = [edge[0] for edge in cycle]
            add(ViolationKind.CYCLE, f"Cycle through {' -> '.join(members + members[:1])}", members)
            return ValidationReport(violations=tuple(violations))

        group_of: Dict[str, int] = {}
        for k, group in enumerate(s.exclusivity_groups):
            for name in sorted(group.operations):
                if name in group_of:
                    add(ViolationKind.EXCLUSIVITY, f"Operation '{name}' is in two exclusivity groups")
                group_of[name] = k
            for a, b in itertools.combinations(sorted(group.operations), 2):
                shared = {
                    q for q in s.operation(a).inputs & s.operation(b).inputs
                    if self.kinds.get(q) == SystemKind.QUANTUM
                }
                if not shared:
                    add(
                        ViolationKind.EXCLUSIVITY,
                        f"Exclusive operations '{a}' and '{b}' share no quantum input",
                    )

        for name in self.names:
            if self.kinds[name] != SystemKind.QUANTUM:
                continue
            consumers = self.consumers(name)
            for a, b in itertools.combinations(consumers, 2):
                if group_of.get(a) is None or group_of.get(a) != group_of.get(b):
                    add(
                        ViolationKind.NO_CLONING,
                        f"Quantum system '{name}' feeds non-exclusive operations '{a}' and '{b}'",
                        [name],
                    )

        for name in self.names:
            if name in self.self_conflicting:
                add(
                    ViolationKind.EXCLUSIVITY,
                    f"System '{name}' depends on two alternatives of one exclusivity group",
                    [name],
                )

        for context in s.marginal_scenario.contexts:
            if not self.is_coexisting(context):
                subset = s.sort_names(context)
                add(
                    ViolationKind.NON_COEXISTING_CONTEXT,
                    f"Marginal context {{{join_names(subset)}}} is not coexisting",
                    subset,
                )

        return ValidationReport(violations=tuple(violations))

    def require_valid(self) -> None:
        """Raise ValidationError unless the structure validates."""
        report = self.validate()
        if not report.ok:
            raise ValidationError(
                "Invalid causal structure",
                errors=[{"kind": v.kind, "message": v.message} for v in report.violations],
            )

    # ------------------------------------------------------------------
    # Rewrites
    # ------------------------------------------------------------------

    def merge_classical_preparations(self) -> CausalStructure:
        """
        Replace each all-classical multi-system preparation by one system.

        Preparations referenced individually by a marginal context are kept.
        """
        s = self.structure
        observed = s.marginal_scenario.variables()
        rename: Dict[str, str] = {}
        for prep in s.preparations:
            members = self._canonical(prep.systems)
            if len(members) < 2 or observed & prep.systems:
                continue
            if any(self.kinds[m] != SystemKind.CLASSICAL for m in members):
                continue
            merged = "_".join(members)
            for m in members:
                rename[m] = merged
        if not rename:
            return s

        systems: List[System] = []
        for system in s.systems:
            target = rename.get(system.name, system.name)
            if target not in [x.name for x in systems]:
                systems.append(System(name=target, kind=system.kind))
        preparations = [
            Preparation(systems=frozenset(rename.get(n, n) for n in p.systems))
            for p in s.preparations
        ]
        operations = [
            Operation(
                name=op.name,
                inputs=frozenset(rename.get(n, n) for n in op.inputs),
                outputs=op.outputs,
            )
            for op in s.operations
        ]
        logger.debug("Merged classical preparations", merged=len(set(rename.values())))
        return CausalStructure(
            systems=tuple(systems),
            preparations=tuple(preparations),
            operations=tuple(operations),
            exclusivity_groups=s.exclusivity_groups,
            marginal_scenario=s.marginal_scenario,
        )


def validate(structure: CausalStructure) -> ValidationReport:
    return StructureService(structure).validate()


def coexisting_sets(structure: CausalStructure) -> List[Tuple[str, ...]]:
    return StructureService(structure).coexisting_sets


def subset_coordinates(structure: CausalStructure) -> SubsetIndex:
    return StructureService(structure).subset_coordinates()


def marginal_index(structure: CausalStructure, scenario: Optional[MarginalScenario] = None) -> SubsetIndex:
    return StructureService(structure).marginal_index(scenario)


def merge_classical_preparations(structure: CausalStructure) -> CausalStructure:
    return StructureService(structure).merge_classical_preparations()
