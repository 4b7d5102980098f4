"""Numerical toolkit for the Siegel upper half-space: symplectic action,
Maass operators, explicit cusp forms and a seeded verification harness."""

__version__ = "0.1.0"
