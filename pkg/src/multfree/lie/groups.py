"""Compact classical groups: factor descriptors, Lie algebra bases, Haar sampling.

Every factor is realized on its defining ("standard") representation by
skew-Hermitian matrices.  The first ``rank`` basis elements of each factor
span a maximal torus; the remaining ones complete a real basis of the Lie
algebra.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import UnsupportedError

CLASSICAL_KINDS = ("U", "SU", "SO", "Sp", "T")
# Recognized so that registry entries can name them; never constructed.
METADATA_KINDS = ("Spin", "G2")

# Desk-scale caps on the size parameter.
SIZE_CAPS = {"U": 4, "SU": 4, "SO": 5, "Sp": 2, "T": 1}
SIZE_MIN = {"U": 1, "SU": 2, "SO": 2, "Sp": 1, "T": 1}


@dataclass(frozen=True)
class Factor:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in CLASSICAL_KINDS + METADATA_KINDS:
            raise ValueError(f"unknown factor type {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"factor size must be >= 1, got {self.n}")

    @property
    def supported(self) -> bool:
        return (self.kind in CLASSICAL_KINDS
                and SIZE_MIN[self.kind] <= self.n <= SIZE_CAPS[self.kind])

    @property
    def dim(self) -> int:
        n = self.n
        return {
            "U": n * n,
            "SU": n * n - 1,
            "SO": n * (n - 1) // 2,
            "Sp": n * (2 * n + 1),
            "T": 1,
            # Spin(n) has the dimension of SO(n); G2 is 14-dimensional.
            "Spin": n * (n - 1) // 2,
            "G2": 14,
        }[self.kind]

    @property
    def rank(self) -> int:
        n = self.n
        return {"U": n, "SU": n - 1, "SO": n // 2, "Sp": n, "T": 1,
                "Spin": n // 2, "G2": 2}[self.kind]

    @property
    def std_dim(self) -> int:
        n = self.n
        return {"U": n, "SU": n, "SO": n, "Sp": 2 * n, "T": 1,
                "Spin": 2 ** (n // 2), "G2": 7}[self.kind]

    def __str__(self) -> str:
        if self.kind == "T":
            return "T"
        if self.kind == "G2":
            return "G2"
        return f"{self.kind}({self.n})"


_FACTOR_RE = re.compile(r"^\s*(U|SU|SO|Sp|Spin|T|G2)\s*(?:\(\s*(\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[Factor, ...]

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"U(2) x SU(2)"``, ``"T x SO(3)"`` and similar."""
        factors = []
        for part in re.split(r"\s*[x×*]\s*", text.strip()):
            m = _FACTOR_RE.match(part)
            if m is None:
                raise ValueError(f"unknown factor type in {part!r}")
            kind, size = m.group(1), m.group(2)
            if kind in ("T", "G2"):
                if size not in (None, "1") and kind == "T":
                    raise ValueError("only the circle T (size 1) is supported")
                n = 1
            else:
                if size is None:
                    raise ValueError(f"factor {kind} needs a size parameter")
                n = int(size)
            factors.append(Factor(kind, n))
        return cls(tuple(factors))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def supported(self) -> bool:
        return all(f.supported for f in self.factors)

    def check_supported(self) -> None:
        for f in self.factors:
            if f.kind in METADATA_KINDS:
                raise UnsupportedError(f"unsupported factor {f} (exceptional/spin groups are metadata-only)")
            if not f.supported:
                raise UnsupportedError(
                    f"unsupported factor {f}: size outside desk-scale range "
                    f"{SIZE_MIN[f.kind]}..{SIZE_CAPS[f.kind]}")

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


def _unit(n, j, k):
    e = np.zeros((n, n), dtype=complex)
    e[j, k] = 1
    return e


def _offdiag_u(n):
    out = []
    for j, k in combinations(range(n), 2):
        out.append(_unit(n, j, k) - _unit(n, k, j))
        out.append(1j * (_unit(n, j, k) + _unit(n, k, j)))
    return out


def lie_basis(factor: Factor) -> list[np.ndarray]:
    """Real basis of the Lie algebra in the standard representation, torus first."""
    kind, n = factor.kind, factor.n
    if kind == "T":
        return [np.array([[1j]])]
    if kind == "U":
        return [1j * _unit(n, j, j) for j in range(n)] + _offdiag_u(n)
    if kind == "SU":
        # i(E_jj - E_nn): weights then read as partitions with last part 0
        last = 1j * _unit(n, n - 1, n - 1)
        return [1j * _unit(n, j, j) - last for j in range(n - 1)] + _offdiag_u(n)
    if kind == "SO":
        m = n // 2
        torus_planes = [(2 * j, 2 * j + 1) for j in range(m)]
        rest = [p for p in combinations(range(n), 2) if p not in torus_planes]
        # L_jk = E_kj - E_jk rotates e_j towards e_k
        return [_unit(n, k, j) - _unit(n, j, k) for j, k in torus_planes + rest]
    if kind == "Sp":
        z = np.zeros((n, n), dtype=complex)

        def block(a, b):
            return np.block([[a, b], [-b.conj(), a.conj()]])

        torus, u_rest, sym = [], [], []
        for x in [1j * _unit(n, j, j) for j in range(n)]:
            torus.append(block(x, z))
        for x in _offdiag_u(n):
            u_rest.append(block(x, z))
        for j in range(n):
            for k in range(j, n):
                s = _unit(n, j, k) + _unit(n, k, j) if j != k else _unit(n, j, j)
                sym.append(block(z, s))
                sym.append(block(z, 1j * s))
        return torus + u_rest + sym
    raise UnsupportedError(f"no matrix realization for factor {factor}")


def gram_matrix(basis: list[np.ndarray]) -> np.ndarray:
    """Gram matrix of the invariant form B(X, Y) = -Re tr(XY)."""
    k = len(basis)
    g = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            g[i, j] = g[j, i] = -np.real(np.trace(basis[i] @ basis[j]))
    return g


def _haar_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _haar_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))


def _haar_symplectic(n, rng):
    # Quaternionic Gram-Schmidt: column n+j is the quaternionic partner -J conj(col_j).
    J = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    cols = []
    for _ in range(n):
        v = (rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)) / np.sqrt(2)
        for c in cols:
            v = v - np.vdot(c, v) * c
        v = v / np.linalg.norm(v)
        w = -J @ v.conj()
        for c in cols:
            w = w - np.vdot(c, w) * c
        w = w - np.vdot(v, w) * v
        w = w / np.linalg.norm(w)
        cols += [v, w]
    first = cols[0::2]
    second = cols[1::2]
    return np.column_stack(first + second)


def haar_factor(factor: Factor, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of the factor in its standard representation."""
    kind, n = factor.kind, factor.n
    if kind == "T":
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    if kind == "U":
        return _haar_unitary(n, rng)
    if kind == "SU":
        g = _haar_unitary(n, rng)
        return g / np.linalg.det(g) ** (1.0 / n)
    if kind == "SO":
        g = _haar_orthogonal(n, rng).astype(complex)
        if np.linalg.det(g).real < 0:
            g[:, 0] *= -1
        return g
    if kind == "Sp":
        return _haar_symplectic(n, rng)
    raise UnsupportedError(f"cannot sample factor {factor}")
