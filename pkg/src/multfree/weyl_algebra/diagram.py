"""Low-degree comparison of d_iota(lambda(p)) with Gamma(tau^*(p)).

For each invariant p on k* of degree 1 or 2 both sides are K-invariant
differential operators on C[V].  The report gives the constant c with
d_iota(lambda(p)) = c Gamma(tau^* p) when one exists, and separately the
constant relating the top-order parts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from ..errors import UnsupportedError
from ..lie.coadjoint import invariant_polys
from ..lie.realization import MatrixRealization
from .operators import PDOperator, apply, gamma
from .polynomials import PolyVR, monomials, to_complex, to_exact
from .uea import d_iota, invariant_in_coordinates, symmetrize

PROPORTIONAL_TOL = 1e-10
MONOMIAL_DEGREE = 4


def _ratio(lhs: PDOperator, rhs: PDOperator):
    """(c, exact) with lhs == c * rhs, or (None, False); (None, True) when both vanish."""
    if not rhs.terms:
        return None, not lhs.terms
    key = max(rhs.terms, key=lambda k: abs(to_complex(rhs.terms[k])))
    c = lhs.terms.get(key, 0)
    if lhs.exact and rhs.exact:
        c = c / rhs.terms[key] if c else to_exact(0)
        return c, lhs == rhs.scale(c)
    c = to_complex(c) / to_complex(rhs.terms[key])
    diff = (lhs - rhs.scale(c)).max_abs()
    return c, diff <= PROPORTIONAL_TOL * max(lhs.max_abs(), 1.0)


def _monomial_ratio_holds(lhs: PDOperator, rhs: PDOperator, c, n: int) -> bool:
    """Independent oracle: compare both operators on every monomial of degree <= 4."""
    for d in range(MONOMIAL_DEGREE + 1):
        for a, _ in monomials(n, d, 0):
            f = PolyVR({(a, (0,) * n): 1}, n)
            left, right = apply(lhs, f), apply(rhs, f)
            if c is None:
                if left.terms or right.terms:
                    return False
            elif not left == right.scale(c):
                return False
    return True


@dataclass
class DiagramEntry:
    name: str
    degree: int
    constant: complex | None
    exact: bool
    top_order_constant: complex | None
    top_order_exact: bool
    monomial_check: bool
    lhs: PDOperator = field(repr=False, default=None)
    rhs: PDOperator = field(repr=False, default=None)

    def as_dict(self) -> dict:
        def num(c):
            if c is None:
                return None
            c = to_complex(c)
            return [c.real, c.imag]
        return {
            "name": self.name,
            "degree": self.degree,
            "constant": num(self.constant) if self.exact else None,
            "proportional": self.exact,
            "top_order_constant": num(self.top_order_constant),
            "top_order_proportional": self.top_order_exact,
            "monomial_check": self.monomial_check,
            "lhs": repr(self.lhs),
            "rhs": repr(self.rhs),
        }


@dataclass
class DiagramReport:
    action: str
    entries: list[DiagramEntry]
    # exactly proportional combinations of degree-2 invariants: (coefficients by name, constant)
    degree2_combinations: list[tuple[dict[str, complex], complex]]

    @property
    def all_proportional(self) -> bool:
        return all(e.exact for e in self.entries)

    def constants_by_degree(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for e in self.entries:
            out.setdefault(e.degree, []).append(e.constant if e.exact else None)
        return out

    def as_dict(self) -> dict:
        return {
            "action": self.action,
            "all_proportional": self.all_proportional,
            "entries": [e.as_dict() for e in self.entries],
            "degree2_combinations": [
                {"coefficients": {k: [complex(v).real, complex(v).imag] for k, v in co.items()},
                 "constant": [complex(c).real, complex(c).imag]}
                for co, c in self.degree2_combinations],
            "tol": PROPORTIONAL_TOL,
        }


def compare(real: MatrixRealization, p: PolyVR, q: PolyVR, name: str, degree: int) -> DiagramEntry:
    """p: polynomial in dual coordinates; q = tau^* p on V_R."""
    lhs = d_iota(real, symmetrize(p))
    rhs = gamma(q)
    c, exact = _ratio(lhs, rhs)
    top = max(lhs.order, rhs.order)
    ct, top_exact = _ratio(lhs.graded_part(top), rhs.graded_part(top))
    mono = _monomial_ratio_holds(lhs, rhs, c, real.dimV) if (exact or c is None) else False
    return DiagramEntry(name, degree, c, exact, ct, top_exact, mono, lhs, rhs)


def _tau_pullback(real: MatrixRealization, p: PolyVR) -> PolyVR:
    from ..moment.tau import tau_polys

    return p.substitute(tau_polys(real)) if p.terms else PolyVR.zero(real.dimV)


def _combinations(entries: list[DiagramEntry], n: int):
    """Search span(entries) for exact proportionality d_iota(lambda p) = c Gamma(tau^* p)."""
    if len(entries) < 2:
        return []
    keys = sorted({k for e in entries for k in list(e.lhs.terms) + list(e.rhs.terms)})
    idx = {k: i for i, k in enumerate(keys)}

    def vec(op):
        v = np.zeros(len(keys), dtype=complex)
        for k, c in op.terms.items():
            v[idx[k]] = to_complex(c)
        return v

    L = np.array([vec(e.lhs) for e in entries]).T
    R = np.array([vec(e.rhs) for e in entries]).T
    out = []
    for c in np.linalg.eigvals(np.linalg.pinv(R) @ L):
        m = L - c * R
        _, s, vh = np.linalg.svd(m)
        if s[-1] > PROPORTIONAL_TOL * max(s[0], 1.0):
            continue
        v = vh[-1].conj()
        v = v / v[np.argmax(np.abs(v))]
        coeffs = {e.name: complex(np.round(x.real, 12) + 1j * np.round(x.imag, 12))
                  for e, x in zip(entries, v) if abs(x) > 1e-12}
        out.append((coeffs, complex(np.round(c.real, 12) + 1j * np.round(c.imag, 12))))
    return out


def diagram_check_low_degree(real: MatrixRealization) -> DiagramReport:
    spec = real.group_spec
    if not (len(spec.factors) == 1 and spec.factors[0].kind == "U" and spec.factors[0].n <= 2
            and real.rep_tag == "std"):
        raise UnsupportedError("diagram check is implemented for U(1) and U(2) on their standard spaces")
    inv = invariant_polys(spec)
    ps = invariant_in_coordinates(inv, real.dimK)
    entries = []
    for g, p in zip(inv.generators, ps):
        if g.degree <= 2:
            entries.append(compare(real, p, _tau_pullback(real, p), g.name, g.degree))
    # degree-2 products of degree-1 generators, for the span search
    deg1 = [(g.name, p) for g, p in zip(inv.generators, ps) if g.degree == 1]
    products = []
    for (n1, p1), (n2, p2) in combinations_with_replacement(deg1, 2):
        pp = p1 * p2
        products.append(compare(real, pp, _tau_pullback(real, pp), f"{n1}*{n2}", 2))
    deg2 = [e for e in entries if e.degree == 2] + products
    return DiagramReport(f"{spec} on C^{real.dimV}", entries + products, _combinations(deg2, real.dimV))
