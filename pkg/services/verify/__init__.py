"""Exact validity checks for entropic inequalities."""
