"""Ribbon data, the quantum functor F and the invariants built from it."""

from .invariants import (F_prime, FramingError, InvariantSeries, Q_prime, bracket,
                         canonicality_report, closed_value, d_zero, evaluate_F, modified_dim,
                         qdim, vassiliev_coefficient, what_Q)
from .ribbon import (FileRibbonDatum, QuantumFunctor, RibbonDatum, RibbonError, Sl2RibbonDatum,
                     bundled_ribbon, load_ribbon)
from .validate import validate_datum

__all__ = [
    "F_prime", "FramingError", "InvariantSeries", "Q_prime", "bracket", "canonicality_report",
    "closed_value", "d_zero", "evaluate_F", "modified_dim", "qdim", "vassiliev_coefficient",
    "what_Q", "FileRibbonDatum", "QuantumFunctor", "RibbonDatum", "RibbonError",
    "Sl2RibbonDatum", "bundled_ribbon", "load_ribbon", "validate_datum",
]
