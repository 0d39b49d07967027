"""Polyhedron services module."""
from services.polyhedron.services.canonical_service import (
    canonicalize,
    canonical_system,
    dedupe_rows,
    row_key,
)
from services.polyhedron.services.fm_service import FourierMotzkin, fm_eliminate, remove_redundant
from services.polyhedron.services.dd_service import (
    DoubleDescription,
    extreme_rays,
    facets_from_rays,
    project_rays,
)
from services.polyhedron.services.porta_service import read_ieq, read_poi, write_ieq, write_poi

__all__ = [
    "canonicalize",
    "canonical_system",
    "dedupe_rows",
    "row_key",
    "FourierMotzkin",
    "fm_eliminate",
    "remove_redundant",
    "DoubleDescription",
    "extreme_rays",
    "facets_from_rays",
    "project_rays",
    "read_ieq",
    "read_poi",
    "write_ieq",
    "write_poi",
]
