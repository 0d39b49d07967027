"""CLI services module."""
from services.cli.services.inequality_parser_service import parse_inequality, resolve_inequality
from services.cli.services.io_service import (
    certificate_to_dict,
    certificate_to_json,
    distribution_from_json,
    distribution_to_json,
    load_distribution,
    load_structure,
    read_text,
    write_text,
)

__all__ = [
    "parse_inequality",
    "resolve_inequality",
    "certificate_to_dict",
    "certificate_to_json",
    "distribution_from_json",
    "distribution_to_json",
    "load_distribution",
    "load_structure",
    "read_text",
    "write_text",
]
