"""Exact polyhedral computation on entropy cones."""
