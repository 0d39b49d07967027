"""Entropic constraint systems of causal structures and their marginals."""
