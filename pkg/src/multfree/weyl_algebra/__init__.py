"""Polynomials on V_R, polynomial-coefficient differential operators and the map Gamma."""
from .diagram import DiagramReport, diagram_check_low_degree
from .invariant_ops import CommutativityResult, commutativity_probe, invariant_operator_basis
from .operators import (PDOperator, apply, commutator, derived_action, gamma, highest_order_check,
                        operator_from_matrix, pd_compose)
from .polynomials import PolyVR
from .uea import UEAElement, d_iota, structure_constants, symmetrize

__all__ = [
    "CommutativityResult", "DiagramReport", "PDOperator", "PolyVR", "UEAElement", "apply",
    "commutativity_probe", "commutator", "d_iota", "derived_action", "diagram_check_low_degree",
    "gamma", "highest_order_check", "invariant_operator_basis", "operator_from_matrix",
    "pd_compose", "structure_constants", "symmetrize",
]
