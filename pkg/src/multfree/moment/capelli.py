"""Does tau* of the invariants on k* reach every K-invariant polynomial on V_R?"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..lie.realization import MatrixRealization
from ..weyl_algebra.polynomials import PolyVR
from .invariants import invariant_catalog
from .tau import pulled_back_generators

CONTAINMENT_TOL = 1e-8
MAX_CAP = 6


@dataclass
class CapelliResult:
    verdict: str  # surjective_up_to_<cap> | not_surjective | inconclusive
    cap: int
    witness: PolyVR | None = None
    witness_residual: float = 0.0
    worst_contained_residual: float = 0.0
    span_dim: int = 0
    invariant_dim: int = 0
    tol: float = CONTAINMENT_TOL

    @property
    def surjective(self) -> bool:
        return self.verdict.startswith("surjective")

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "cap": self.cap,
            "witness": None if self.witness is None else repr(self.witness),
            "witness_residual": self.witness_residual,
            "worst_contained_residual": self.worst_contained_residual,
            "pullback_span_dim": self.span_dim,
            "invariant_dim": self.invariant_dim,
            "containment_tol": self.tol,
        }


def pullback_products(real: MatrixRealization, cap: int) -> list[PolyVR]:
    """All monomials in the pulled-back generators of total degree <= cap."""
    gens = pulled_back_generators(real)
    degs = [g.degree for g in gens]
    n = real.dimV
    out = []
    bounds = [range(cap // d + 1) if d > 0 else range(1) for d in degs]
    for exps in product(*bounds):
        if sum(e * d for e, d in zip(exps, degs)) > cap:
            continue
        p = PolyVR.const(n, 1)
        for g, e in zip(gens, exps):
            if e:
                p = p * g ** e
        out.append(p)
    return out


def _relative_residual(basis: np.ndarray, v: np.ndarray) -> float:
    if basis.shape[1] == 0:
        return 1.0
    coef, *_ = np.linalg.lstsq(basis, v, rcond=None)
    return float(np.linalg.norm(basis @ coef - v) / max(np.linalg.norm(v), 1e-300))


def capelli_probe(real: MatrixRealization, degree_cap: int = 4, tol: float = CONTAINMENT_TOL) -> CapelliResult:
    if not 0 <= degree_cap <= MAX_CAP:
        raise ValueError(f"degree_cap must lie in [0, {MAX_CAP}]")
    cat = invariant_catalog(real, degree_cap)
    invariants = cat.polys()
    span = pullback_products(real, degree_cap)
    index: dict = {}
    for p in span + invariants:
        for k in p.terms:
            index.setdefault(k, len(index))

    def vec(p):
        v = np.zeros(len(index), dtype=complex)
        for k, c in p.as_float().terms.items():
            v[index[k]] = c
        return v

    span_mat = np.array([vec(p) for p in span]).T if span else np.zeros((len(index), 0))
    span_dim = int(np.linalg.matrix_rank(span_mat)) if span else 0
    worst_in = 0.0
    for p in invariants:
        r = _relative_residual(span_mat, vec(p))
        if r > tol:
            wit = _real_witness(p, span_mat, vec, tol)
            return CapelliResult("not_surjective" if cat.stable else "inconclusive", degree_cap,
                                 wit[0], wit[1], worst_in, span_dim, len(invariants), tol)
        worst_in = max(worst_in, r)
    verdict = f"surjective_up_to_{degree_cap}" if cat.stable else "inconclusive"
    return CapelliResult(verdict, degree_cap, None, 0.0, worst_in, span_dim, len(invariants), tol)


def _real_witness(p: PolyVR, span_mat, vec, tol):
    """Prefer a real-valued invariant (real or imaginary part) as the witness."""
    for q in ((p + p.conj()).scale(0.5), (p - p.conj()).scale(-0.5j)):
        if q.max_abs() > 1e-12:
            r = _relative_residual(span_mat, vec(q))
            if r > tol:
                return q, r
    return p, _relative_residual(span_mat, vec(p))
