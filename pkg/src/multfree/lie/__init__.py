"""Compact classical groups, their unitary actions and coadjoint geometry."""
from .coadjoint import DualElement, InvariantPolySet, ad_star, dual_of, dualize, invariant_polys
from .groups import Factor, GroupSpec, haar_factor, lie_basis
from .realization import (
    MatrixRealization,
    build_realization,
    complexify,
    haar_sample,
    haar_sample_factors,
    realify,
)

__all__ = [
    "DualElement", "Factor", "GroupSpec", "InvariantPolySet", "MatrixRealization",
    "ad_star", "build_realization", "complexify", "dual_of", "dualize", "haar_factor",
    "haar_sample", "haar_sample_factors", "invariant_polys", "lie_basis", "realify",
]
