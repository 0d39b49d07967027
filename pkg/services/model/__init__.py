"""Causal structures: validation, coexistence and entropy coordinates."""
