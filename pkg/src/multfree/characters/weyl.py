"""Weyl groups, dominance and the Weyl character formula for classical factors.

Torus coordinates follow the realization's torus basis:

* U(n): epsilon coordinates (weights of ``i E_jj``);
* SU(n): epsilon coordinates normalized to last entry 0 (torus ``i(E_jj - E_nn)``);
* SO(n): coefficients on the rotation planes (1,2), (3,4), ...;
* Sp(n): epsilon coordinates of the quaternionic torus;
* T: the single exponent.

In each chart the positive roots are lexicographically positive, which is
what makes greedy peeling by the lexicographic leading term correct.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import prod

import numpy as np

from ..errors import NotACharacterError
from ..lie.groups import Factor, GroupSpec
from .laurent import LaurentPoly


class FactorWeyl:
    """Weyl group data for one factor, acting on its ambient epsilon chart."""

    def __init__(self, factor: Factor):
        self.factor = factor
        kind, n = factor.kind, factor.n
        self.kind = kind
        self.rank = factor.rank
        self.ambient = 1 if kind == "T" else n // 2 if kind == "SO" else n
        m = self.ambient
        if kind in ("U", "SU"):
            self.rho = [Fraction(m - 1 - i) for i in range(m)]
            self.roots = [tuple(int(a == i) - int(a == j) for a in range(m))
                          for i in range(m) for j in range(i + 1, m)]
            elems = [(p, (1,) * m) for p in permutations(range(m))]
        elif kind == "T":
            self.rho, self.roots, elems = [Fraction(0)], [], [((0,), (1,))]
        else:
            pairs = []
            for i in range(m):
                for j in range(i + 1, m):
                    pairs.append(tuple(int(a == i) - int(a == j) for a in range(m)))
                    pairs.append(tuple(int(a == i) + int(a == j) for a in range(m)))
            if kind == "SO" and n % 2 == 1:  # B_m
                short = [tuple(int(a == i) for a in range(m)) for i in range(m)]
                self.rho = [Fraction(2 * (m - i) - 1, 2) for i in range(m)]
                self.roots = pairs + short
                signs_ok = lambda s: True
            elif kind == "SO":  # D_m
                self.rho = [Fraction(m - 1 - i) for i in range(m)]
                self.roots = pairs
                signs_ok = lambda s: prod(s) == 1
            else:  # Sp: C_m
                long_ = [tuple(2 * int(a == i) for a in range(m)) for i in range(m)]
                self.rho = [Fraction(m - i) for i in range(m)]
                self.roots = pairs + long_
                signs_ok = lambda s: True
            elems = [(p, s) for p in permutations(range(m)) for s in product((1, -1), repeat=m)
                     if signs_ok(s)]
        # element (p, s) maps ambient v to w with w[p[i]] = s[i] * v[i]
        self.elements = elems

    def lift(self, coords):
        if self.kind == "SU":
            return tuple(coords) + (0,)
        return tuple(coords)

    def lower(self, amb):
        if self.kind == "SU":
            return tuple(a - amb[-1] for a in amb[:-1])
        return tuple(amb)

    @staticmethod
    def _apply(elem, v):
        p, s = elem
        out = [0] * len(v)
        for i, (pi, si) in enumerate(zip(p, s)):
            out[pi] = si * v[i]
        return out

    def sign(self, elem) -> int:
        p, s = elem
        mat = np.zeros((len(p), len(p)))
        for i, (pi, si) in enumerate(zip(p, s)):
            mat[pi, i] = si
        return int(round(np.linalg.det(mat)))

    def act(self, elem, coords):
        return self.lower(self._apply(elem, self.lift(coords)))

    def is_dominant(self, coords) -> bool:
        v = self.lift(coords)
        kind, m = self.kind, self.ambient
        if kind == "T":
            return True
        if kind in ("U", "SU"):
            return all(v[i] >= v[i + 1] for i in range(m - 1))
        if kind == "SO" and self.factor.n % 2 == 0:
            if m == 1:
                return True
            return all(v[i] >= v[i + 1] for i in range(m - 2)) and v[m - 2] >= abs(v[m - 1])
        return all(v[i] >= v[i + 1] for i in range(m - 1)) and v[-1] >= 0

    def dimension(self, coords) -> int:
        lam = [Fraction(a) for a in self.lift(coords)]
        num = den = Fraction(1)
        for r in self.roots:
            num *= sum((l + p) * a for l, p, a in zip(lam, self.rho, r))
            den *= sum(p * a for p, a in zip(self.rho, r))
        q = num / den
        if q.denominator != 1:
            raise NotACharacterError(f"non-integral Weyl dimension for {coords}")
        return int(q)

    @lru_cache(maxsize=None)
    def character(self, coords: tuple[int, ...]) -> LaurentPoly:
        """Weyl character as (alternant of lambda + rho) / (alternant of rho).

        Exponents are doubled during the division so that half-integral rho
        (type B) stays integral; the quotient is halved afterwards.
        """
        if not self.is_dominant(coords):
            raise NotACharacterError(f"{coords} is not dominant for {self.factor}")
        lam = self.lift(coords)
        top = [2 * Fraction(l) + 2 * p for l, p in zip(lam, self.rho)]
        bottom = [2 * p for p in self.rho]

        def alternant(v):
            out = {}
            for el in self.elements:
                e = self.lower(tuple(int(x) for x in self._apply(el, v)))
                out[e] = out.get(e, 0) + self.sign(el)
            return LaurentPoly(out, self.rank)

        quotient = alternant(top).divide_exact(alternant(bottom))

        def halve(e):
            if any(x % 2 for x in e):
                raise NotACharacterError("odd exponent in doubled character")
            return tuple(x // 2 for x in e)

        return quotient.map_exponents(halve)

    def is_symmetric(self, ch: LaurentPoly, offset: int) -> bool:
        r = self.rank
        for el in self.elements:
            for e, c in ch.terms.items():
                local = e[offset:offset + r]
                img = e[:offset] + self.act(el, local) + e[offset + r:]
                if ch.terms.get(img, 0) != c:
                    return False
        return True


class GroupWeyl:
    """Product of factor Weyl data over the concatenated torus chart."""

    def __init__(self, spec: GroupSpec):
        spec.check_supported()
        self.spec = spec
        self.factors = [FactorWeyl(f) for f in spec.factors]
        self.offsets = []
        o = 0
        for fw in self.factors:
            self.offsets.append(o)
            o += fw.rank
        self.rank = o

    def split(self, label):
        return [tuple(label[o:o + fw.rank]) for o, fw in zip(self.offsets, self.factors)]

    def is_dominant(self, label) -> bool:
        return all(fw.is_dominant(part) for fw, part in zip(self.factors, self.split(label)))

    def dimension(self, label) -> int:
        return prod(fw.dimension(part) for fw, part in zip(self.factors, self.split(label)))

    def character(self, label) -> LaurentPoly:
        out = LaurentPoly.one(0)
        for fw, part in zip(self.factors, self.split(label)):
            out = out.concat(fw.character(tuple(part)))
        return out

    def is_symmetric(self, ch: LaurentPoly) -> bool:
        return all(fw.is_symmetric(ch, o) for fw, o in zip(self.factors, self.offsets))


@lru_cache(maxsize=None)
def group_weyl(spec: GroupSpec) -> GroupWeyl:
    return GroupWeyl(spec)


def weyl_character(spec: GroupSpec, label) -> LaurentPoly:
    """Exact character of the irreducible with dominant highest weight ``label``."""
    return group_weyl(spec).character(tuple(int(x) for x in label))
