"""Low-degree elements of the universal enveloping algebra and their action on C[V].

Words are tuples of basis indices; ``(i, j)`` stands for ``A_i A_j``.
"""
from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np

from ..lie.coadjoint import InvariantPolySet
from ..lie.realization import MatrixRealization
from .operators import PDOperator, operator_from_matrix, pd_compose
from .polynomials import PolyVR, to_complex, to_exact

Word = tuple[int, ...]
MAX_WORD = 2


def _coerce(c):
    e = to_exact(c)
    return e if e is not None else complex(c)


class UEAElement:
    """Formal sum of words in the basis A_1..A_dimK, degree <= 2."""

    __slots__ = ("terms", "dimK")

    def __init__(self, terms: dict[Word, object], dimK: int):
        for w in terms:
            if len(w) > MAX_WORD:
                raise ValueError(f"words longer than {MAX_WORD} are not supported")
        self.terms = {tuple(w): _coerce(c) for w, c in terms.items() if c}
        self.dimK = dimK

    @classmethod
    def basis_element(cls, i: int, dimK: int) -> "UEAElement":
        return cls({(i,): 1}, dimK)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return UEAElement(out, self.dimK)

    def scale(self, s) -> "UEAElement":
        s = _coerce(s)
        return UEAElement({w: c * s for w, c in self.terms.items()}, self.dimK)

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return UEAElement(out, self.dimK)

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c})*A{'A'.join(map(str, w))}" if w else f"({c})"
                          for w, c in sorted(self.terms.items())) or "0"

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def straighten(self, structure) -> "UEAElement":
        """Rewrite A_j A_i (j > i) as A_i A_j - [A_i, A_j] using explicit brackets."""
        out: dict = {}

        def add(w, c):
            out[w] = out[w] + c if w in out else c

        for w, c in self.terms.items():
            if len(w) == 2 and w[0] > w[1]:
                i, j = w[1], w[0]
                add((i, j), c)
                for k, s in structure[(i, j)].items():
                    add((k,), -c * s)
            else:
                add(w, c)
        return UEAElement(out, self.dimK)


def structure_constants(real: MatrixRealization) -> dict[tuple[int, int], dict[int, object]]:
    """[A_i, A_j] = sum_k c_k A_k for i < j, with exact c_k when rational."""
    out = {}
    mats = real.basis
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            br = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords = real.coords_of(br)
            out[(i, j)] = {k: _coerce(round(float(c), 12)) for k, c in enumerate(coords) if abs(c) > 1e-12}
    return out


def symmetrize(p: PolyVR) -> UEAElement:
    """lambda: a polynomial in the dual coordinates c_i -> average of the orderings of its words.

    ``p`` is a holomorphic polynomial whose variable i stands for c_i = xi(A_i).
    """
    if not p.is_holomorphic():
        raise ValueError("expected a polynomial in the dual coordinates")
    if p.degree > MAX_WORD:
        raise ValueError(f"symmetrization is implemented through degree {MAX_WORD}")
    out: dict = {}
    for (a, _), c in p.terms.items():
        letters = [i for i, e in enumerate(a) for _ in range(e)]
        orders = list(permutations(letters))
        share = c * to_exact(1) / factorial(len(letters)) if p.exact else to_complex(c) / factorial(len(letters))
        for w in orders:
            out[w] = out[w] + share if w in out else share
    return UEAElement(out, p.n)


def d_iota(real: MatrixRealization, u: UEAElement) -> PDOperator:
    """The derived action of a UEA element on C[V], as a differential operator.

    A word A_i A_j acts as f -> A_i.(A_j.f) with (A.f)(z) = -(Az).grad f.
    """
    n = real.dimV
    ops = [operator_from_matrix(x) for x in real.basis]
    total = PDOperator({}, n, exact=True)
    for w, c in u.terms.items():
        op = PDOperator.identity(n)
        for i in w:
            op = pd_compose(op, ops[i])
        total = total + op.scale(c)
    return total


def invariant_in_coordinates(inv: InvariantPolySet, dimK: int) -> list[PolyVR]:
    """Each generator as a polynomial in the dual coordinates c_1..c_dimK."""
    coords = np.empty(dimK, dtype=object)
    for i in range(dimK):
        coords[i] = PolyVR.z(dimK, i)
    return [q if isinstance(q, PolyVR) else PolyVR.const(dimK, q) for q in inv.evaluate_generic(coords)]
