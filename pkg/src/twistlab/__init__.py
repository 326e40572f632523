"""Stabilizer-circuit laboratory for twisted toric-code experiments."""

from .pauli import PauliOperator, commutes, is_hermitian, multiply
from .tableau import StabilizerTableau

__all__ = [
    "PauliOperator",
    "StabilizerTableau",
    "commutes",
    "is_hermitian",
    "multiply",
]

__version__ = "0.1.0"
