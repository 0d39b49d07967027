"""Utilities module exports."""
from shared.utils.exceptions import (
    EntropicException,
    NotFoundError,
    ValidationError,
    ParseError,
    CoordinateError,
    DimensionMismatchError,
    UsageError,
)
from shared.utils.helpers import (
    parse_rational,
    format_rational,
    lcm_of_denominators,
    gcd_of,
    primitive_vector,
    primitive_dict,
    iter_submasks,
    mask_bits,
    join_names,
)
from shared.utils.logger import configure_logging, get_logger

__all__ = [
    # Exceptions
    "EntropicException",
    "NotFoundError",
    "ValidationError",
    "ParseError",
    "CoordinateError",
    "DimensionMismatchError",
    "UsageError",
    # Helpers
    "parse_rational",
    "format_rational",
    "lcm_of_denominators",
    "gcd_of",
    "primitive_vector",
    "primitive_dict",
    "iter_submasks",
    "mask_bits",
    "join_names",
    # Logging
    "configure_logging",
    "get_logger",
]
