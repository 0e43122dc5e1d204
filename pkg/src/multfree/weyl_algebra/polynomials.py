"""Polynomials on the realification of V, in the coordinates z_j and conj(z_j).

Coefficients are exact Gaussian rationals (sympy's ``QQ_I``) whenever the
inputs allow it, and complex floats otherwise.  Mixed arithmetic falls back
to floats.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

import numpy as np
from sympy.polys.domains import QQ, QQ_I

Exp = tuple[int, ...]
Key = tuple[Exp, Exp]

# largest denominator accepted when recognizing a float as a rational
MAX_DENOMINATOR = 10**6


def _is_exact(c) -> bool:
    return not isinstance(c, (float, complex, np.floating, np.complexfloating))


def _frac(x: float) -> Fraction | None:
    f = Fraction(float(x)).limit_denominator(MAX_DENOMINATOR)
    return f if abs(float(f) - float(x)) <= 1e-15 * max(1.0, abs(float(x))) else None


def to_exact(c):
    """Convert a number to ``QQ_I`` if it is (numerically) a Gaussian rational, else None."""
    if isinstance(c, (int, np.integer)):
        return QQ_I(int(c), 0)
    if isinstance(c, Fraction):
        return QQ_I(QQ(c.numerator, c.denominator), 0)
    if _is_exact(c):
        return c
    c = complex(c)
    re, im = _frac(c.real), _frac(c.imag)
    if re is None or im is None:
        return None
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def round_exact(c, max_denominator: int = MAX_DENOMINATOR):
    """Nearest Gaussian rational with bounded denominators (no exactness check)."""
    c = complex(c)
    re = Fraction(c.real).limit_denominator(max_denominator)
    im = Fraction(c.imag).limit_denominator(max_denominator)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def to_complex(c) -> complex:
    if _is_exact(c) and hasattr(c, "x"):
        return complex(float(c.x), float(c.y))
    return complex(c)


def conj_coeff(c):
    if _is_exact(c) and hasattr(c, "x"):
        return QQ_I(c.x, -c.y)
    return complex(c).conjugate()


def _scalar(c, exact: bool):
    """Coerce a scalar for multiplication into a polynomial of the given exactness."""
    if exact:
        e = to_exact(c)
        if e is not None:
            return e, True
        return complex(c), False
    return to_complex(c), False


class PolyVR:
    """Polynomial ``sum c[(a, b)] z^a conj(z)^b`` in ``n`` complex variables."""

    __slots__ = ("terms", "n", "exact")

    def __init__(self, terms: Mapping[Key, object] | Iterable = (), n: int = 0, exact: bool | None = None):
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        if exact is None:
            exact = all(_is_exact(c) for _, c in items)
        coeffs = [to_exact(c) for _, c in items] if exact else []
        if not exact or any(c is None for c in coeffs):
            exact = False
            coeffs = [to_complex(c) for _, c in items]
        acc: dict = {}
        for ((a, b), _), c in zip(items, coeffs):
            key = (tuple(a), tuple(b))
            acc[key] = acc[key] + c if key in acc else c
        self.terms = {k: c for k, c in acc.items() if c}
        self.n = n
        self.exact = exact

    # constructors
    @classmethod
    def zero(cls, n: int) -> "PolyVR":
        return cls({}, n, exact=True)

    @classmethod
    def const(cls, n: int, c=1) -> "PolyVR":
        return cls({((0,) * n, (0,) * n): c}, n)

    @classmethod
    def z(cls, n: int, i: int) -> "PolyVR":
        a = [0] * n
        a[i] = 1
        return cls({(tuple(a), (0,) * n): 1}, n)

    @classmethod
    def zbar(cls, n: int, i: int) -> "PolyVR":
        b = [0] * n
        b[i] = 1
        return cls({((0,) * n, tuple(b)): 1}, n)

    # arithmetic
    def _coerce(self, other: "PolyVR"):
        if self.exact and other.exact:
            return self, other, True
        return self.as_float(), other.as_float(), False

    def _as_poly(self, other):
        if isinstance(other, PolyVR):
            return other
        return PolyVR.const(self.n, other) if other else PolyVR.zero(self.n)

    def __add__(self, other):
        other = self._as_poly(other)
        a, b, exact = self._coerce(other)
        out = dict(a.terms)
        for k, c in b.terms.items():
            out[k] = out[k] + c if k in out else c
        return PolyVR(out, max(self.n, other.n), exact=exact)

    __radd__ = __add__

    def __neg__(self):
        return PolyVR({k: -c for k, c in self.terms.items()}, self.n, exact=self.exact)

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def scale(self, s) -> "PolyVR":
        s, exact = _scalar(s, self.exact)
        src = self if exact else self.as_float()
        return PolyVR({k: c * s for k, c in src.terms.items()}, self.n, exact=exact)

    def __mul__(self, other):
        if not isinstance(other, PolyVR):
            return self.scale(other)
        a, b, exact = self._coerce(other)
        out: dict = {}
        for (a1, b1), c1 in a.terms.items():
            for (a2, b2), c2 in b.terms.items():
                k = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                v = c1 * c2
                out[k] = out[k] + v if k in out else v
        return PolyVR(out, self.n, exact=exact)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = PolyVR.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyVR):
            other = self._as_poly(other)
        if self.exact and other.exact:
            return self.terms == other.terms
        return (self - other).max_abs() <= 1e-12

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
            mono += "".join(f"zb{i}^{e}" if e > 1 else f"zb{i}" for i, e in enumerate(b) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # structure
    def as_float(self) -> "PolyVR":
        if not self.exact:
            return self
        return PolyVR({k: to_complex(c) for k, c in self.terms.items()}, self.n, exact=False)

    def max_abs(self) -> float:
        return max((abs(to_complex(c)) for c in self.terms.values()), default=0.0)

    def prune(self, tol: float = 1e-12) -> "PolyVR":
        if self.exact:
            return self
        return PolyVR({k: c for k, c in self.terms.items() if abs(c) > tol}, self.n, exact=False)

    def conj(self) -> "PolyVR":
        return PolyVR({(b, a): conj_coeff(c) for (a, b), c in self.terms.items()}, self.n, exact=self.exact)

    @property
    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.terms), default=-1)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(sum(a), sum(b)) for a, b in self.terms}

    def homogeneous_part(self, d: int) -> "PolyVR":
        return PolyVR({k: c for k, c in self.terms.items() if sum(k[0]) + sum(k[1]) == d},
                      self.n, exact=self.exact)

    def is_holomorphic(self) -> bool:
        return all(not any(b) for _, b in self.terms)

    def substitute(self, values: list["PolyVR"]) -> "PolyVR":
        """Compose a holomorphic polynomial with the given polynomials."""
        if not self.is_holomorphic():
            raise ValueError("substitution is defined for holomorphic polynomials")
        if not values:
            return self
        m = values[0].n
        out = PolyVR.zero(m)
        for (a, _), c in self.terms.items():
            t = PolyVR.const(m, c)
            for v, e in zip(values, a):
                if e:
                    t = t * v ** e
            out = out + t
        return out

    def evaluate(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        zc = z.conj()
        total = 0j
        for (a, b), c in self.terms.items():
            total += to_complex(c) * np.prod(z ** np.array(a)) * np.prod(zc ** np.array(b))
        return total

    def evaluator(self):
        """Vectorized evaluation at many points: returns f(Z) for Z of shape (N, n)."""
        keys = list(self.terms)
        if not keys:
            return lambda Z: np.zeros(np.asarray(Z).shape[0], dtype=complex)
        A = np.array([k[0] for k in keys])
        B = np.array([k[1] for k in keys])
        C = np.array([to_complex(self.terms[k]) for k in keys])

        def f(Z):
            Z = np.atleast_2d(np.asarray(Z, dtype=complex))
            mono = np.prod(Z[:, None, :] ** A[None], axis=2) * np.prod(Z.conj()[:, None, :] ** B[None], axis=2)
            return mono @ C

        return f


def monomials(n: int, a: int, b: int) -> list[Key]:
    """All exponent pairs of bidegree (a, b) in n variables, in a fixed order."""

    def exps(d):
        out = []
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return out

    return [(x, y) for x in exps(a) for y in exps(b)]


def bidegrees_up_to(cap: int) -> list[tuple[int, int]]:
    return [(a, d - a) for d in range(cap + 1) for a in range(d, -1, -1)]


def from_vector(keys: list[Key], vec, n: int, exact: bool | None = None) -> PolyVR:
    return PolyVR({k: c for k, c in zip(keys, vec)}, n, exact=exact)


def to_vector(p: PolyVR, index: Mapping[Key, int]) -> np.ndarray:
    v = np.zeros(len(index), dtype=complex)
    for k, c in p.terms.items():
        v[index[k]] = to_complex(c)
    return v
