"""Common Pydantic schemas used across all services."""
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict

from shared.utils.helpers import parse_rational


class BaseSchema(BaseModel):
    """Base schema with common configuration."""

    model_config = ConfigDict(
        frozen=True,  # domain objects are immutable once validated
        populate_by_name=True,
        use_enum_values=True,
        arbitrary_types_allowed=True,  # fractions.Fraction
    )


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, `p/q` strings and Fractions to Fraction."""
    if isinstance(value, float):
        raise ValueError("floating-point values are not accepted; use p/q")
    return parse_rational(value)
