"""
Causal Entropy Toolkit - Shared Library
Common configuration, schemas, exceptions and helpers used across all services.
"""

__version__ = "1.0.0"
