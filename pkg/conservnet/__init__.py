"""Discover conserved quantities in grouped trajectory data."""

__version__ = "0.1.0"
