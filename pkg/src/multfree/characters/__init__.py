"""Exact formal characters and the decomposition of C[V]."""
from .decompose import (
    Decomposition,
    MFVerdict,
    Violation,
    decompose,
    decompose_polynomials,
    multiplicity_free_check,
    rep_weights,
    sym_power_character,
)
from .laurent import LaurentPoly
from .weyl import group_weyl, weyl_character

__all__ = [
    "Decomposition", "LaurentPoly", "MFVerdict", "Violation", "decompose",
    "decompose_polynomials", "group_weyl", "multiplicity_free_check", "rep_weights",
    "sym_power_character", "weyl_character",
]
