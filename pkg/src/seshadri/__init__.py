"""Seshadri stratifications: fans of monoids, quasi-valuations, subduction and Groebner lifting."""

from .errors import DomainError, InputError, SeshadriError
from .fan import FanElement, FanOfMonoids, decompose
from .poset import Chain, Linearization, StratPoset, maximal_chains, validate
from .polyring import GroebnerBasis, MonomialOrder, Polynomial, VariableSet, buchberger

__all__ = [
    "Chain",
    "DomainError",
    "FanElement",
    "FanOfMonoids",
    "GroebnerBasis",
    "InputError",
    "Linearization",
    "MonomialOrder",
    "Polynomial",
    "SeshadriError",
    "StratPoset",
    "VariableSet",
    "buchberger",
    "decompose",
    "maximal_chains",
    "validate",
]
