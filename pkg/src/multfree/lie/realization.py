"""Unitary representations K -> U(V) built from factor standard representations.

Representation descriptors (``rep_tag``)::

    std | dual | S2 | L2          single-factor groups only
    tensor                        tensor product of all factor standards
    tensor(t1, t2, ...)           one of std/dual/S2/L2/triv per factor
    sum(r1, r2, ...)              direct sum of any of the above

Hermitian convention, fixed once for the whole package: ``<z, w> = sum z_i conj(w_i)``
is linear in the first argument and ``omega = Im <., .>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement

import numpy as np
from scipy.linalg import block_diag

from ..errors import ConstructionError, UnsupportedError
from .groups import Factor, GroupSpec, gram_matrix, haar_factor, lie_basis

FACTOR_TAGS = ("std", "dual", "S2", "L2", "triv")


def _sym_isometry(m: int, antisym: bool) -> np.ndarray:
    """Columns: orthonormal basis of S^2(C^m) (or L^2) inside C^m (x) C^m."""
    pairs = combinations(range(m), 2) if antisym else combinations_with_replacement(range(m), 2)
    cols = []
    for i, j in pairs:
        v = np.zeros(m * m, dtype=complex)
        if i == j:
            v[i * m + i] = 1.0
        else:
            v[i * m + j] = 1 / np.sqrt(2)
            v[j * m + i] = -1 / np.sqrt(2) if antisym else 1 / np.sqrt(2)
        cols.append(v)
    return np.column_stack(cols) if cols else np.zeros((m * m, 0), dtype=complex)


@dataclass(frozen=True)
class _FactorRep:
    tag: str
    m: int  # dimension of the factor's standard representation

    @cached_property
    def _iso(self):
        return _sym_isometry(self.m, self.tag == "L2")

    @property
    def dim(self) -> int:
        if self.tag in ("std", "dual"):
            return self.m
        if self.tag == "triv":
            return 1
        return self._iso.shape[1]

    def algebra(self, x: np.ndarray) -> np.ndarray:
        if self.tag == "std":
            return x
        if self.tag == "dual":
            return x.conj()
        if self.tag == "triv":
            return np.zeros((1, 1), dtype=complex)
        eye = np.eye(self.m)
        return self._iso.conj().T @ (np.kron(x, eye) + np.kron(eye, x)) @ self._iso

    def group(self, g: np.ndarray) -> np.ndarray:
        if self.tag == "std":
            return g
        if self.tag == "dual":
            return g.conj()
        if self.tag == "triv":
            return np.ones((1, 1), dtype=complex)
        return self._iso.conj().T @ np.kron(g, g) @ self._iso


@dataclass(frozen=True)
class _TensorRep:
    parts: tuple[_FactorRep, ...]

    @property
    def dim(self) -> int:
        return int(np.prod([p.dim for p in self.parts]))

    def _kron(self, mats):
        out = np.ones((1, 1), dtype=complex)
        for a in mats:
            out = np.kron(out, a)
        return out

    def algebra(self, fi: int, x: np.ndarray) -> np.ndarray:
        mats = [np.eye(p.dim) for p in self.parts]
        mats[fi] = self.parts[fi].algebra(x)
        return self._kron(mats)

    def group(self, gs) -> np.ndarray:
        return self._kron([p.group(g) for p, g in zip(self.parts, gs)])


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_rep_tag(tag: str, spec: GroupSpec) -> tuple[_TensorRep, ...]:
    """Normalize a representation descriptor into a direct sum of tensor products."""
    tag = tag.strip()
    dims = [f.std_dim for f in spec.factors]
    m = re.fullmatch(r"(sum|tensor)\s*\((.*)\)", tag)
    if m and m.group(1) == "sum":
        summands = []
        for sub in _split_args(m.group(2)):
            summands.extend(parse_rep_tag(sub, spec))
        if not summands:
            raise UnsupportedError("empty direct sum")
        return tuple(summands)
    if m:
        tags = _split_args(m.group(2))
        if len(tags) != len(spec.factors):
            raise UnsupportedError(
                f"tensor({m.group(2)}) needs one tag per factor ({len(spec.factors)})")
        for t in tags:
            if t not in FACTOR_TAGS:
                raise UnsupportedError(f"unsupported factor representation {t!r}")
        return (_TensorRep(tuple(_FactorRep(t, d) for t, d in zip(tags, dims))),)
    if tag == "tensor":
        return (_TensorRep(tuple(_FactorRep("std", d) for d in dims)),)
    if tag in ("std", "dual", "S2", "L2"):
        if len(spec.factors) != 1:
            raise UnsupportedError(
                f"rep tag {tag!r} is ambiguous for a product group; use tensor(...)")
        return (_TensorRep((_FactorRep(tag, dims[0]),)),)
    raise UnsupportedError(f"unsupported rep_tag {tag!r} for group {spec}")


@dataclass(frozen=True, eq=False)
class MatrixRealization:
    """A compact group action given by skew-Hermitian matrices on ``V = C^dimV``.

    ``basis[i]`` is the image on V of the i-th Lie algebra basis element and
    ``std_basis[i]`` the same element in its factor's standard representation.
    """

    group_spec: GroupSpec
    rep_tag: str
    dimV: int
    basis: tuple[np.ndarray, ...]
    std_basis: tuple[np.ndarray, ...]
    factor_of: tuple[int, ...]
    factor_offsets: tuple[tuple[int, int], ...]
    torus: tuple[int, ...]
    _summands: tuple[_TensorRep, ...] = field(repr=False)

    @property
    def dimK(self) -> int:
        return len(self.basis)

    @property
    def dimV_R(self) -> int:
        return 2 * self.dimV

    @cached_property
    def basis_array(self) -> np.ndarray:
        return np.array(self.basis)

    @cached_property
    def _expander(self) -> np.ndarray:
        flat = np.array([np.concatenate([a.real.ravel(), a.imag.ravel()]) for a in self.basis]).T
        return np.linalg.pinv(flat)

    def coords_of(self, x: np.ndarray) -> np.ndarray:
        """Real coordinates of a Lie algebra element (given on V) in the basis."""
        return self._expander @ np.concatenate([x.real.ravel(), x.imag.ravel()])

    def element(self, coords) -> np.ndarray:
        """Lie algebra element on V with the given real coordinates."""
        return np.tensordot(np.asarray(coords, dtype=float), self.basis_array, axes=1)

    def group_image(self, factor_elements) -> np.ndarray:
        """Image on V of a tuple of factor elements (standard representations)."""
        return block_diag(*[s.group(factor_elements) for s in self._summands])

    @cached_property
    def grams(self) -> tuple[np.ndarray, ...]:
        return tuple(gram_matrix(list(self.std_basis[a:b])) for a, b in self.factor_offsets)

    def bracket_residual(self) -> float:
        worst = 0.0
        arr = self.basis_array
        for i in range(self.dimK):
            for j in range(i + 1, self.dimK):
                c = arr[i] @ arr[j] - arr[j] @ arr[i]
                r = self.element(self.coords_of(c)) - c
                worst = max(worst, float(np.abs(r).max()))
        return worst


def build_realization(spec: GroupSpec | str, rep_tag: str = "std") -> MatrixRealization:
    """Construct the skew-Hermitian basis of the Lie algebra acting on V."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    spec.check_supported()
    summands = parse_rep_tag(rep_tag, spec)
    basis, std_basis, factor_of, offsets, torus = [], [], [], [], []
    for fi, factor in enumerate(spec.factors):
        start = len(basis)
        fb = lie_basis(factor)
        for j, x in enumerate(fb):
            img = block_diag(*[s.algebra(fi, x) for s in summands])
            basis.append(img)
            std_basis.append(x)
            factor_of.append(fi)
            if j < factor.rank:
                torus.append(start + j)
        offsets.append((start, len(basis)))
    real = MatrixRealization(
        group_spec=spec,
        rep_tag=rep_tag,
        dimV=basis[0].shape[0],
        basis=tuple(basis),
        std_basis=tuple(std_basis),
        factor_of=tuple(factor_of),
        factor_offsets=tuple(offsets),
        torus=tuple(torus),
        _summands=summands,
    )
    _validate(real)
    return real


def _validate(real: MatrixRealization) -> None:
    for a in real.basis:
        if np.abs(a.conj().T + a).max() > 1e-12:
            raise ConstructionError("basis matrix is not skew-Hermitian")
    flat = np.array([np.concatenate([a.real.ravel(), a.imag.ravel()]) for a in real.basis])
    if np.linalg.matrix_rank(flat, tol=1e-10) != real.dimK:
        raise UnsupportedError(
            f"{real.rep_tag} of {real.group_spec} is not faithful on the Lie algebra; "
            "pass to a quotient group (e.g. U(n) x SU(m) for C^n (x) C^m)")


def haar_sample(real: MatrixRealization, seed) -> np.ndarray:
    """Haar-random element of K, returned as a unitary matrix on V.

    ``seed`` may be an int or a ``numpy.random.Generator``; factors are sampled
    one after another from the same stream.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return real.group_image([haar_factor(f, rng) for f in real.group_spec.factors])


def haar_sample_factors(real: MatrixRealization, rng: np.random.Generator):
    """Like :func:`haar_sample` but also returns the factor elements."""
    gs = [haar_factor(f, rng) for f in real.group_spec.factors]
    return gs, real.group_image(gs)


def realify(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def complexify(x: np.ndarray) -> np.ndarray:
    n = x.shape[0] // 2
    return x[:n] + 1j * x[n:]
