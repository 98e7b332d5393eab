"""Finite-model law checker for setoids with function-induced apartness."""

from .kernel import (
    AxiomReport,
    Bounds,
    DEFAULT_BOUNDS,
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    Witness,
    check_ineq_axioms,
    is_strongly_extensional,
    validate_function,
)
from .rationals import Rat, rat_apart, rat_cotrans

__all__ = [
    "AxiomReport",
    "Bounds",
    "DEFAULT_BOUNDS",
    "FinSetoid",
    "FnFamily",
    "FnTable",
    "IneqSet",
    "Rat",
    "Witness",
    "check_ineq_axioms",
    "is_strongly_extensional",
    "rat_apart",
    "rat_cotrans",
    "validate_function",
]
