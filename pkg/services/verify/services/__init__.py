"""Verify services module."""
from services.verify.services.simplex_service import FarkasResult, FarkasSolver, PivotLimitError
from services.verify.services.verify_service import (
    VerifyService,
    check_lift,
    equivalent,
    expand,
    implies,
    in_projection,
    is_valid,
    replay,
)

__all__ = [
    "FarkasResult",
    "FarkasSolver",
    "PivotLimitError",
    "VerifyService",
    "check_lift",
    "equivalent",
    "expand",
    "implies",
    "in_projection",
    "is_valid",
    "replay",
]
