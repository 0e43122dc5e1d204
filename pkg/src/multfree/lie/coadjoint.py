"""Duals of Lie algebras, the coadjoint action, and Ad*-invariant polynomials on k*.

k* is identified with k through B(X, Y) = -Re tr(XY) computed in each factor's
standard representation; a dual element is stored by its values on the basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import UnsupportedError
from .groups import GroupSpec, gram_matrix, lie_basis


@dataclass(frozen=True, eq=False)
class DualElement:
    """xi in k*, stored as the values xi(A_i) on the realization basis."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=float))

    def __call__(self, x_coords) -> float:
        return float(np.dot(self.coords, x_coords))

    def __len__(self):
        return len(self.coords)


def ad_star(real, k: np.ndarray, xi: DualElement) -> DualElement:
    """Coadjoint action: (Ad*(k) xi)(A_i) = xi(k^-1 A_i k)."""
    if len(xi) != real.dimK:
        raise ValueError(f"dual element has {len(xi)} coordinates, expected {real.dimK}")
    if k.shape != (real.dimV, real.dimV):
        raise ValueError("group element does not act on V")
    kinv = k.conj().T
    conj = kinv[None] @ real.basis_array @ k[None]
    flat = np.concatenate([conj.real.reshape(real.dimK, -1), conj.imag.reshape(real.dimK, -1)], axis=1)
    m = real._expander @ flat.T  # column i: coordinates of k^-1 A_i k
    return DualElement(m.T @ xi.coords)


def dual_of(real, x: np.ndarray) -> DualElement:
    """The dual element B(x, .) of a Lie algebra element ``x`` given on V.

    Coordinates are computed through the factor Gram matrices, so
    ``dualize(real, dual_of(real, x))`` recovers the factor components of ``x``.
    """
    c = real.coords_of(x)
    out = np.empty(real.dimK)
    for (a, b), g in zip(real.factor_offsets, real.grams):
        out[a:b] = g @ c[a:b]
    return DualElement(out)


def dualize(real, xi: DualElement) -> list[np.ndarray]:
    """Standard-representation matrices X_f with B(X_f, A_i) = xi(A_i) per factor."""
    out = []
    for (a, b), g in zip(real.factor_offsets, real.grams):
        x = np.linalg.solve(g, xi.coords[a:b])
        out.append(np.tensordot(x, np.array(real.std_basis[a:b]), axes=1))
    return out


# -- invariant polynomials ---------------------------------------------------

def _matmul(a, b):
    if a.dtype != object and b.dtype != object:
        return a @ b
    n, m, p = a.shape[0], a.shape[1], b.shape[1]
    out = np.empty((n, p), dtype=object)
    for i in range(n):
        for j in range(p):
            acc = a[i, 0] * b[0, j]
            for k in range(1, m):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def _trace(a):
    acc = a[0, 0]
    for i in range(1, a.shape[0]):
        acc = acc + a[i, i]
    return acc


def _pfaffian(a):
    n = a.shape[0]
    if n == 0:
        return 1
    if n == 2:
        return a[0, 1]
    acc = None
    for j in range(1, n):
        keep = [k for k in range(1, n) if k != j]
        minor = a[np.ix_(keep, keep)]
        term = a[0, j] * _pfaffian(minor)
        if (j - 1) % 2:
            term = -1 * term
        acc = term if acc is None else acc + term
    return acc


@dataclass(frozen=True)
class Generator:
    factor: int
    kind: str  # "coord" | "trace" | "pfaffian"
    power: int
    degree: int

    @property
    def name(self) -> str:
        if self.kind == "coord":
            return f"f{self.factor}:coord"
        if self.kind == "pfaffian":
            return f"f{self.factor}:pf"
        return f"f{self.factor}:tr^{self.power}"


class InvariantPolySet:
    """Generating Ad*-invariant polynomials on k*, evaluated on dual coordinates.

    Evaluation works for float coordinates and, through :meth:`evaluate_generic`,
    for coordinates that are polynomial objects supporting ``+`` and ``*``.
    """

    def __init__(self, spec: GroupSpec):
        spec.check_supported()
        self.spec = spec
        self.generators: list[Generator] = []
        self._bases, self._ginv, self._offsets = [], [], []
        start = 0
        for fi, f in enumerate(spec.factors):
            basis = lie_basis(f)
            self._bases.append(np.array(basis))
            self._ginv.append(np.linalg.inv(gram_matrix(basis)))
            self._offsets.append((start, start + len(basis)))
            start += len(basis)
            n = f.n
            if f.kind == "T":
                self.generators.append(Generator(fi, "coord", 1, 1))
            elif f.kind in ("U", "SU"):
                lo = 1 if f.kind == "U" else 2
                self.generators += [Generator(fi, "trace", j, j) for j in range(lo, n + 1)]
            elif f.kind == "SO":
                self.generators += [Generator(fi, "trace", 2 * j, 2 * j) for j in range(1, (n - 1) // 2 + 1)]
                if n % 2 == 0:
                    self.generators.append(Generator(fi, "pfaffian", 1, n // 2))
            elif f.kind == "Sp":
                self.generators += [Generator(fi, "trace", 2 * j, 2 * j) for j in range(1, n + 1)]
            else:
                raise UnsupportedError(f"no invariant generators for {f}")

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def _matrix(self, fi, c):
        a, b = self._offsets[fi]
        cf = c[a:b]
        ginv = self._ginv[fi]
        basis = self._bases[fi]
        if not isinstance(cf, np.ndarray) or cf.dtype == object:
            cf = list(cf)
            x = [sum((ginv[j, i] * cf[i] for i in range(len(cf)) if ginv[j, i] != 0), start=0 * cf[0])
                 for j in range(len(cf))]
            m = basis.shape[1]
            mat = np.empty((m, m), dtype=object)
            for r in range(m):
                for s in range(m):
                    terms = [complex(basis[j, r, s]) * x[j] for j in range(len(x)) if basis[j, r, s] != 0]
                    acc = 0 * cf[0]
                    for t in terms:
                        acc = acc + t
                    mat[r, s] = acc
            return mat
        return np.tensordot(ginv @ cf, basis, axes=1)

    def evaluate_generic(self, c) -> list:
        cache = {}
        out = []
        for g in self.generators:
            if g.kind == "coord":
                out.append(c[self._offsets[g.factor][0]])
                continue
            if g.factor not in cache:
                cache[g.factor] = self._matrix(g.factor, c)
            x = cache[g.factor]
            kind = self.spec.factors[g.factor].kind
            if g.kind == "pfaffian":
                # SO matrices are real antisymmetric
                out.append(_pfaffian(x))
                continue
            base = 1j * x if kind in ("U", "SU") else x
            p = base
            for _ in range(g.power - 1):
                p = _matmul(p, base)
            out.append(_trace(p))
        return out

    def evaluate(self, xi) -> np.ndarray:
        coords = xi.coords if isinstance(xi, DualElement) else np.asarray(xi, dtype=float)
        return np.array([complex(v).real for v in self.evaluate_generic(coords)])


def invariant_polys(spec: GroupSpec | str) -> InvariantPolySet:
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    return InvariantPolySet(spec)
