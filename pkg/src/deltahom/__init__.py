"""Diagrams, knot invariants and delta edge-homotopy invariants of handcuff graphs."""

__version__ = "0.1.0"
