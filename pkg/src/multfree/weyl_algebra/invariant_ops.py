"""K-invariant differential operators: Gamma-images of invariant polynomials on V_R."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..lie.realization import MatrixRealization
from .operators import PDOperator, commutator, gamma
from .polynomials import PolyVR

COMMUTATOR_TOL = 1e-9
MAX_CAP = 6


@dataclass(frozen=True)
class InvariantOperator:
    bidegree: tuple[int, int]
    symbol: PolyVR
    operator: PDOperator


def invariant_operator_basis(real: MatrixRealization, degree_cap: int = 4) -> list[InvariantOperator]:
    """Gamma-images of a basis of C[V_R]^K in degrees <= degree_cap.

    Bidegrees whose kernel dimension is unstable are dropped with a warning.
    """
    from ..moment.invariants import invariant_catalog

    if not 0 <= degree_cap <= MAX_CAP:
        raise ValueError(f"degree_cap must lie in [0, {MAX_CAP}]")
    out = []
    for bideg, space in invariant_catalog(real, degree_cap).spaces.items():
        if not space.stable:
            warnings.warn(f"dropping unstable invariant space of bidegree {bideg}")
            continue
        out += [InvariantOperator(bideg, p, gamma(p)) for p in space.basis]
    return out


@dataclass
class CommutativityResult:
    verdict: str  # abelian_up_to_<cap> | not_abelian
    cap: int
    witness: tuple[PDOperator, PDOperator, PDOperator] | None = None  # (D1, D2, [D1, D2])
    nonzero_pairs: int = 0
    pairs_checked: int = 0
    exact: bool = True

    @property
    def abelian(self) -> bool:
        return self.verdict.startswith("abelian")

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "cap": self.cap,
            "witness": None if self.witness is None else [repr(d) for d in self.witness],
            "nonzero_pairs": self.nonzero_pairs,
            "pairs_checked": self.pairs_checked,
            "exact": self.exact,
            "tol": 0.0 if self.exact else COMMUTATOR_TOL,
        }


def _shift(op: InvariantOperator) -> int:
    a, b = op.bidegree
    return abs(a - b)


def commutativity_probe(real: MatrixRealization, degree_cap: int = 4) -> CommutativityResult:
    """All pairwise commutators of the invariant operator basis.

    Pairs are examined from the largest combined degree shift |a - b| down,
    so a raising/lowering pair is reported before its Euler-type companions.
    """
    basis = invariant_operator_basis(real, degree_cap)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    pairs.sort(key=lambda ij: -(_shift(basis[ij[0]]) + _shift(basis[ij[1]])))
    exact = all(op.operator.exact for op in basis)
    witness, nonzero = None, 0
    for i, j in pairs:
        d1, d2 = basis[i].operator, basis[j].operator
        # lowering operator first, matching the [Laplacian, multiplication] convention
        if basis[i].bidegree[0] > basis[j].bidegree[0]:
            d1, d2 = d2, d1
        c = commutator(d1, d2)
        scale = max(d1.max_abs() * d2.max_abs(), 1.0)
        if (not c.terms) if exact else c.max_abs() <= COMMUTATOR_TOL * scale:
            continue
        nonzero += 1
        if witness is None:
            witness = (d1, d2, c)
    verdict = "not_abelian" if nonzero else f"abelian_up_to_{degree_cap}"
    return CommutativityResult(verdict, degree_cap, witness, nonzero, len(pairs), exact)
