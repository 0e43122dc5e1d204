"""Polynomial-coefficient differential operators on C[V] in normal order.

A term ``((a, b), c)`` is the operator ``c * z^a d^b``: all multiplications to
the left of all derivatives.  Equality of operators is equality of term maps.
"""
from __future__ import annotations

from math import comb, perm
from itertools import product
from typing import Mapping

import numpy as np

from .polynomials import PolyVR, _is_exact, to_complex, to_exact

Key = tuple[tuple[int, ...], tuple[int, ...]]


class PDOperator:
    __slots__ = ("terms", "n", "exact")

    def __init__(self, terms: Mapping[Key, object] = (), n: int = 0, exact: bool | None = None):
        # reuse PolyVR's coefficient normalization
        p = PolyVR(terms, n, exact=exact)
        self.terms, self.n, self.exact = p.terms, n, p.exact

    @classmethod
    def identity(cls, n: int) -> "PDOperator":
        return cls({((0,) * n, (0,) * n): 1}, n)

    @classmethod
    def mult(cls, n: int, i: int) -> "PDOperator":
        a = [0] * n
        a[i] = 1
        return cls({(tuple(a), (0,) * n): 1}, n)

    @classmethod
    def partial(cls, n: int, i: int) -> "PDOperator":
        b = [0] * n
        b[i] = 1
        return cls({((0,) * n, tuple(b)): 1}, n)

    def _poly(self) -> PolyVR:
        p = PolyVR.zero(self.n)
        p.terms, p.exact = dict(self.terms), self.exact
        return p

    @classmethod
    def _from_poly(cls, p: PolyVR) -> "PDOperator":
        out = cls.__new__(cls)
        out.terms, out.n, out.exact = p.terms, p.n, p.exact
        return out

    def __add__(self, other):
        return PDOperator._from_poly(self._poly() + other._poly())

    def __sub__(self, other):
        return PDOperator._from_poly(self._poly() - other._poly())

    def __neg__(self):
        return PDOperator._from_poly(-self._poly())

    def scale(self, s) -> "PDOperator":
        return PDOperator._from_poly(self._poly().scale(s))

    def __mul__(self, other):
        if isinstance(other, PDOperator):
            return pd_compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return pd_compose(self, other)

    def __eq__(self, other):
        return isinstance(other, PDOperator) and self._poly() == other._poly()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(f"z{i}^{e}" if e > 1 else f"z{i}" for i, e in enumerate(a) if e)
            mono += "".join(f"d{i}^{e}" if e > 1 else f"d{i}" for i, e in enumerate(b) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    @property
    def order(self) -> int:
        """Highest total order (z-degree plus derivative order) among the terms."""
        return max((sum(a) + sum(b) for a, b in self.terms), default=-1)

    def graded_part(self, d: int) -> "PDOperator":
        return PDOperator._from_poly(self._poly().homogeneous_part(d))

    def max_abs(self) -> float:
        return self._poly().max_abs()

    def is_zero(self, tol: float = 1e-9) -> bool:
        return not self.terms if self.exact else self.max_abs() <= tol


def gamma(p: PolyVR) -> PDOperator:
    """z^a conj(z)^b  ->  z^a d^b, extended linearly."""
    return PDOperator._from_poly(p)


def _dz_times_z(beta, gamma_):
    """Normal-ordered expansion of d^beta z^gamma as [(kappa, coeff)] with

    d^beta z^gamma = sum_kappa coeff * z^(gamma - kappa) d^(beta - kappa).
    """
    ranges = [range(min(b, g) + 1) for b, g in zip(beta, gamma_)]
    out = []
    for kappa in product(*ranges):
        c = 1
        for b, g, k in zip(beta, gamma_, kappa):
            c *= comb(b, k) * perm(g, k)
        out.append((kappa, c))
    return out


def pd_compose(d1: PDOperator, d2: PDOperator) -> PDOperator:
    """Exact product d1 o d2, re-normal-ordered through d_i z_j = z_j d_i + delta_ij."""
    if d1.n != d2.n:
        raise ValueError("operators act on different numbers of variables")
    exact = d1.exact and d2.exact
    t1 = d1.terms if exact else d1._poly().as_float().terms
    t2 = d2.terms if exact else d2._poly().as_float().terms
    out: dict = {}
    for (a, b), c1 in t1.items():
        for (g, dl), c2 in t2.items():
            base = c1 * c2
            for kappa, c in _dz_times_z(b, g):
                key = (tuple(x + y - k for x, y, k in zip(a, g, kappa)),
                       tuple(x + y - k for x, y, k in zip(b, dl, kappa)))
                v = base * c
                out[key] = out[key] + v if key in out else v
    return PDOperator(out, d1.n, exact=exact)


def commutator(d1: PDOperator, d2: PDOperator) -> PDOperator:
    return pd_compose(d1, d2) - pd_compose(d2, d1)


def apply(d: PDOperator, f: PolyVR) -> PolyVR:
    """Apply an operator to a holomorphic polynomial, exactly."""
    if not f.is_holomorphic():
        raise ValueError("operators act on holomorphic polynomials C[V]")
    exact = d.exact and f.exact
    out: dict = {}
    zero = (0,) * d.n
    for (a, b), c1 in (d.terms if exact else d._poly().as_float().terms).items():
        for (g, _), c2 in (f.terms if exact else f.as_float().terms).items():
            if any(x > y for x, y in zip(b, g)):
                continue
            c = 1
            for x, y in zip(b, g):
                c *= perm(y, x)
            key = (tuple(p + y - x for p, x, y in zip(a, b, g)), zero)
            v = c1 * c2 * c
            out[key] = out[key] + v if key in out else v
    return PolyVR(out, d.n, exact=exact)


def operator_from_matrix(x: np.ndarray) -> PDOperator:
    """First-order operator of the derived action: (X.f)(z) = -(Xz) . grad f."""
    n = x.shape[0]
    terms = {}
    for k in range(n):
        for l in range(n):
            if x[k, l] != 0:
                a = [0] * n
                a[l] = 1
                b = [0] * n
                b[k] = 1
                key = (tuple(a), tuple(b))
                terms[key] = terms.get(key, 0) - complex(x[k, l])
    return PDOperator(terms, n, exact=True)


def derived_action(real, x: np.ndarray, f: PolyVR) -> PolyVR:
    """(X.f)(z) = d/dt f(exp(-tX) z) at t = 0, for X given on V."""
    return apply(operator_from_matrix(np.asarray(x)), f)


def highest_order_check(p: PolyVR, q: PolyVR):
    """Compare top-order parts of gamma(pq) and gamma(p) o gamma(q).

    Returns ``("agree", None)`` or ``("counterexample", (key, lhs, rhs))``.
    """
    lhs = gamma(p * q)
    rhs = pd_compose(gamma(p), gamma(q))
    top = max(lhs.order, rhs.order)
    a, b = lhs.graded_part(top), rhs.graded_part(top)
    if a == b:
        return "agree", None
    diff = (a - b).terms
    key = next(iter(diff))
    return "counterexample", (key, a.terms.get(key, 0), b.terms.get(key, 0))
