"""Decomposition of C[V] = sum_d Sym^d(V*) into irreducibles by character peeling."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from ..errors import ConstructionError, NotACharacterError
from ..lie.groups import GroupSpec
from ..lie.realization import MatrixRealization
from .laurent import LaurentPoly
from .weyl import group_weyl

Label = tuple[int, ...]


def rep_weights(real: MatrixRealization) -> list[Label]:
    """Torus weights of V, one integer vector per basis vector of a weight basis."""
    torus = [real.basis[i] for i in real.torus]
    for a in torus:
        for b in torus:
            if np.abs(a @ b - b @ a).max() > 1e-10:
                raise ConstructionError("torus basis elements do not commute")
    herm = [-1j * t for t in torus]
    if all(np.abs(h - np.diag(np.diagonal(h))).max() < 1e-14 for h in herm):
        vals = np.array([np.diagonal(h).real for h in herm]).T
    else:
        # a generic combination separates distinct weights
        c = np.sqrt(np.arange(2, len(herm) + 2)) * np.pi
        _, vecs = np.linalg.eigh(sum(ci * h for ci, h in zip(c, herm)))
        vals = np.array([[np.vdot(v, h @ v).real for h in herm] for v in vecs.T])
    weights = np.rint(vals)
    if np.abs(weights - vals).max() > 1e-8:
        raise ConstructionError("torus eigenvalues are not integral")
    return [tuple(int(x) for x in w) for w in weights]


def sym_power_character(real: MatrixRealization, d: int, weights=None) -> LaurentPoly:
    """Character of Sym^d(V*), the degree-d polynomials under p(k^-1 z)."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if weights is None:
        weights = rep_weights(real)
    neg = [tuple(-x for x in w) for w in weights]
    r = len(real.torus)
    acc: Counter = Counter()
    for combo in combinations_with_replacement(range(len(neg)), d):
        e = [0] * r
        for i in combo:
            for j, x in enumerate(neg[i]):
                e[j] += x
        acc[tuple(e)] += 1
    return LaurentPoly(acc, r)


def weyl_character_for(spec: GroupSpec, label) -> LaurentPoly:
    return group_weyl(spec).character(tuple(label))


def decompose(ch: LaurentPoly, spec: GroupSpec) -> dict[Label, int]:
    """Peel a character into irreducibles: {dominant label: multiplicity}.

    The lexicographically greatest remaining exponent is always a highest
    weight (positive roots are lex-positive), so its coefficient is the
    multiplicity of that irreducible.
    """
    gw = group_weyl(spec)
    if not gw.is_symmetric(ch):
        raise NotACharacterError("input is not Weyl-symmetric")
    out: dict[Label, int] = {}
    rem = ch
    while rem:
        e, c = rem.leading()
        if c < 0:
            raise NotACharacterError(f"negative coefficient {c} at {e} while peeling")
        if not gw.is_dominant(e):
            raise NotACharacterError(f"leading exponent {e} is not dominant")
        out[e] = c
        rem = rem - gw.character(e) * c
    return out


@dataclass
class Decomposition:
    spec: GroupSpec
    dimV: int
    by_degree: list[dict[Label, int]] = field(default_factory=list)

    def dimension_residuals(self) -> list[int]:
        """sum mult * dim - C(dimV + d - 1, d) per degree (all zero when exact)."""
        gw = group_weyl(self.spec)
        return [sum(m * gw.dimension(l) for l, m in comp.items()) - comb(self.dimV + d - 1, d)
                for d, comp in enumerate(self.by_degree)]


def decompose_polynomials(real: MatrixRealization, max_degree: int) -> Decomposition:
    weights = rep_weights(real)
    dec = Decomposition(real.group_spec, real.dimV)
    for d in range(max_degree + 1):
        dec.by_degree.append(decompose(sym_power_character(real, d, weights), real.group_spec))
    return dec


@dataclass(frozen=True)
class Violation:
    label: Label
    degrees: tuple[int, ...]
    multiplicity: int

    def describe(self) -> str:
        if len(self.degrees) == 1:
            return f"label {self.label} has multiplicity {self.multiplicity} in degree {self.degrees[0]}"
        return f"label {self.label} occurs in degrees {self.degrees}"


@dataclass
class MFVerdict:
    """Outcome of the degree-truncated multiplicity-free check."""

    multiplicity_free: bool
    max_degree: int
    violations: list[Violation]
    decomposition: Decomposition

    @property
    def first_violation(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def summary(self) -> str:
        if self.multiplicity_free:
            return f"MF_up_to_{self.max_degree}"
        return "violation: " + self.first_violation.describe()


def multiplicity_free_check(real: MatrixRealization, max_degree: int = 4) -> MFVerdict:
    """Multiplicity-freeness of C[V] through ``max_degree``.

    Labels are aggregated across degrees, since each irreducible must occur
    at most once in all of C[V].
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    dec = decompose_polynomials(real, max_degree)
    violations: list[Violation] = []
    seen: dict[Label, list[int]] = {}
    for d, comp in enumerate(dec.by_degree):
        for label in sorted(comp, reverse=True):
            mult = comp[label]
            if mult > 1:
                violations.append(Violation(label, (d,), mult))
            if label in seen:
                violations.append(Violation(label, tuple(seen[label]) + (d,), mult))
            seen.setdefault(label, []).append(d)
    return MFVerdict(not violations, max_degree, violations, dec)
