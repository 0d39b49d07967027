"""Cone services module."""
from services.cone.services.cone_service import (
    ConeService,
    assemble,
    conditional_independencies,
    data_processing_inequalities,
    elemental_inequalities,
    elemental_rows,
)
from services.cone.services.dseparation_service import DSeparationService, d_separated
from services.cone.services.row_format_service import (
    format_row,
    format_rows,
    format_system,
    parse_row,
    parse_rows,
)
from services.cone.services.pipeline_service import PipelineService, marginal_cone, marginal_shannon

__all__ = [
    "ConeService",
    "assemble",
    "conditional_independencies",
    "data_processing_inequalities",
    "elemental_inequalities",
    "elemental_rows",
    "DSeparationService",
    "d_separated",
    "format_row",
    "format_rows",
    "format_system",
    "parse_row",
    "parse_rows",
    "PipelineService",
    "marginal_cone",
    "marginal_shannon",
]
