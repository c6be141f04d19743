"""Renormalized quantum invariants of links colored by Lie superalgebra
modules, their Vassiliev expansion, and the matching weight systems."""

__version__ = "0.1.0"
