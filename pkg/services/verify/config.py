"""Verify service specific configuration."""
from shared.config import Settings


class VerifySettings(Settings):
    """Exact LP settings."""

    # Safety limit per exact LP
    LP_MAX_PIVOTS: int = 1000000

    # Propose a support or a ray with HiGHS before the exact simplex
    LP_FLOAT_HINT: bool = True
    LP_FLOAT_TOLERANCE: float = 1e-9


verify_settings = VerifySettings()
