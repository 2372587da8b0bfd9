"""Biquandle coloring invariants of virtual links and their persistent homology."""

__version__ = "0.1.0"
