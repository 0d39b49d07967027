"""Model services module."""
from services.model.services.structure_service import (
    StructureService,
    validate,
    coexisting_sets,
    subset_coordinates,
    marginal_index,
    merge_classical_preparations,
)
from services.model.services.dsl_service import DslService, parse_structure, emit_structure

__all__ = [
    "StructureService",
    "validate",
    "coexisting_sets",
    "subset_coordinates",
    "marginal_index",
    "merge_classical_preparations",
    "DslService",
    "parse_structure",
    "emit_structure",
]
