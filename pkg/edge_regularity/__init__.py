"""Exact invariants of edge ideals of small graphs."""
