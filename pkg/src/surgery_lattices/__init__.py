"""Exact lattice invariants of Dehn surgeries on knots."""

__version__ = "0.1.0"
