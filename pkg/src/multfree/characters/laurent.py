"""Integer Laurent polynomials in torus variables (formal characters)."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from ..errors import NotACharacterError

Exp = tuple[int, ...]


class LaurentPoly:
    """Finite sum of ``coeff * x^exp`` with integer exponent vectors.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]] = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, int] = defaultdict(int)
        for e, c in items:
            acc[tuple(int(v) for v in e)] += int(c)
        self.terms = {e: c for e, c in acc.items() if c}
        if nvars is None:
            nvars = len(next(iter(self.terms))) if self.terms else 0
        self.nvars = nvars

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: 1}, nvars)

    @classmethod
    def monomial(cls, exp: Exp, coeff: int = 1) -> "LaurentPoly":
        return cls({tuple(exp): coeff}, len(exp))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        parts = [f"{c}*x^{e}" for e, c in sorted(self.terms.items(), reverse=True)]
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.nvars or other.nvars)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: dict[Exp, int] = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def concat(self, other: "LaurentPoly") -> "LaurentPoly":
        """Product in disjoint variable sets (character of an outer tensor product)."""
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = c1 * c2
        return LaurentPoly(out, self.nvars + other.nvars)

    def map_exponents(self, f) -> "LaurentPoly":
        return LaurentPoly(((f(e), c) for e, c in self.terms.items()), self.nvars)

    def at_identity(self) -> int:
        """Value at x = (1, ..., 1): the dimension of the representation."""
        return sum(self.terms.values())

    def leading(self) -> tuple[Exp, int]:
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient by lexicographic long division.

        Raises :class:`NotACharacterError` if a remainder is left.  A genuine
        quotient has its exponents inside the box ``box(self) - box(divisor)``,
        which bounds the iteration.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly({}, self.nvars)
        n = self.nvars
        lo = [min(e[i] for e in self.terms) - min(e[i] for e in divisor.terms) for i in range(n)]
        hi = [max(e[i] for e in self.terms) - max(e[i] for e in divisor.terms) for i in range(n)]
        dlead, dcoef = divisor.leading()
        rem = dict(self.terms)
        quot: dict[Exp, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, dlead))
            if c % dcoef or any(q < l or q > h for q, l, h in zip(qe, lo, hi)):
                raise NotACharacterError(f"division leaves a remainder (term {c}*x^{e})")
            qc = c // dcoef
            quot[qe] = qc
            for de, dc in divisor.terms.items():
                key = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(key, 0) - qc * dc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly(quot, n)
