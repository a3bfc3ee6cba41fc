"""Exact verification of arithmetic Riemann-Roch torsion and theta identities."""

__version__ = "0.1.0"
