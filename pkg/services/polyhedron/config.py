"""Polyhedron service specific configuration."""
from shared.config import Settings


class PolyhedronSettings(Settings):
    """Fourier-Motzkin settings."""

    # Run the LP redundancy pass after every eliminated coordinate
    FM_REDUNDANCY_EVERY_STEP: bool = True

    # Drop combinations whose history exceeds (#eliminated + 1)
    FM_USE_CHERNIKOV_RULE: bool = True

    # Hard guard on intermediate system size
    FM_MAX_ROWS: int = 200000


polyhedron_settings = PolyhedronSettings()
