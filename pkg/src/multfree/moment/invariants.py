"""K-invariant polynomials on V_R, one bidegree (a, b) at a time.

K is connected, so f is invariant iff X.f = 0 for every basis element X of
the Lie algebra.  The invariant space of a bidegree is therefore the common
kernel of finitely many explicit matrices; no group integration is needed.
The kernel is put in reduced row echelon form, rounded to Gaussian rationals
and re-verified (exactly when the realization has rational entries).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..lie.realization import MatrixRealization, haar_sample
from ..weyl_algebra.polynomials import (PolyVR, bidegrees_up_to, from_vector, monomials,
                                        conj_coeff, round_exact, to_exact)

KERNEL_RTOL = 1e-9
STABILITY_TOLS = (1e-10, 1e-8)
VERIFY_TOL = 1e-10


def exact_matrix(x: np.ndarray):
    """Entries of x as Gaussian rationals, or None if any entry is not one."""
    out = [[to_exact(c) for c in row] for row in np.asarray(x)]
    return None if any(c is None for row in out for c in row) else out


def lie_derivative(x, f: PolyVR) -> PolyVR:
    """X.f for f in C[V_R]: -(Xz).grad_z f - (conj(X) conj(z)).grad_zbar f.

    ``x`` may be a numpy matrix or a nested list of exact entries.
    """
    exact_x = not isinstance(x, np.ndarray)
    n = f.n
    if exact_x:
        xc = [[conj_coeff(c) for c in row] for row in x]
    else:
        xc = np.conj(x)
    exact = exact_x and f.exact
    src = f.terms if exact else f.as_float().terms
    out: dict = {}

    def add(key, v):
        out[key] = out[key] + v if key in out else v

    for (a, b), c in src.items():
        for k in range(n):
            if a[k]:
                for l in range(n):
                    if x[k][l]:
                        na = list(a)
                        na[k] -= 1
                        na[l] += 1
                        add((tuple(na), b), -c * a[k] * (x[k][l] if exact else complex(x[k][l])))
            if b[k]:
                for l in range(n):
                    if xc[k][l]:
                        nb = list(b)
                        nb[k] -= 1
                        nb[l] += 1
                        add((a, tuple(nb)), -c * b[k] * (xc[k][l] if exact else complex(xc[k][l])))
    return PolyVR(out, n, exact=exact)


def _torus_weight_zero(real: MatrixRealization, keys):
    """Drop monomials of nonzero torus weight; the flag says whether this applied."""
    torus = [real.basis[i] for i in real.torus]
    if not all(np.abs(t - np.diag(np.diagonal(t))).max() < 1e-14 for t in torus):
        return keys, False
    w = np.array([np.diagonal(t).imag for t in torus]).T  # (dimV, rank)
    out = []
    for a, b in keys:
        if np.abs((np.array(a) - np.array(b)) @ w).max(initial=0.0) < 1e-9:
            out.append((a, b))
    return out, True


def _action_matrix(x: np.ndarray, keys, n: int) -> np.ndarray:
    """Matrix of f -> X.f on span(keys), rows indexed by the image monomials."""
    rows_index, images = {}, []
    for key in keys:
        img = lie_derivative(x, PolyVR({key: 1.0}, n, exact=False)).terms
        images.append(img)
        for k in img:
            rows_index.setdefault(k, len(rows_index))
    m = np.zeros((len(rows_index), len(keys)), dtype=complex)
    for j, img in enumerate(images):
        for k, c in img.items():
            m[rows_index[k], j] = c
    return m


def _null_space(m: np.ndarray, rtol: float) -> np.ndarray:
    ncols = m.shape[1]
    if m.size == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    scale = max(s[0] if s.size else 0.0, 1.0)
    rank = int(np.sum(s > rtol * scale))
    return vh[rank:].conj().T


def rref(rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Reduced row echelon form of a full-rank row set (partial pivoting)."""
    a = np.array(rows, dtype=complex)
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        if r == nrows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) < tol:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] /= a[r, c]
        for i in range(nrows):
            if i != r:
                a[i] -= a[i, c] * a[r]
        r += 1
    a[np.abs(a) < 1e-13] = 0
    return a[:r]


@dataclass
class InvariantSpace:
    """Basis of the K-invariant polynomials of one bidegree."""

    bidegree: tuple[int, int]
    basis: list[PolyVR]
    exact: bool
    stable: bool
    verify_residual: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.basis)


def _verify(real: MatrixRealization, polys: list[PolyVR], exact_basis) -> tuple[bool, float]:
    """Exact check when possible; otherwise the largest floating residual."""
    if exact_basis is not None and all(p.exact for p in polys):
        ok = all(not lie_derivative(x, p).terms for x in exact_basis for p in polys)
        return ok, 0.0 if ok else float("inf")
    worst = 0.0
    for x in real.basis:
        for p in polys:
            worst = max(worst, lie_derivative(x, p).max_abs() / max(p.max_abs(), 1e-300))
    return worst <= VERIFY_TOL, worst


def _exact_realization_basis(real: MatrixRealization):
    mats = [exact_matrix(x) for x in real.basis]
    return None if any(m is None for m in mats) else mats


def invariant_space(real: MatrixRealization, a: int, b: int,
                    rtol: float = KERNEL_RTOL) -> InvariantSpace:
    n = real.dimV
    keys, filtered = _torus_weight_zero(real, monomials(n, a, b))
    if not keys:
        return InvariantSpace((a, b), [], True, True)
    torus = set(real.torus) if filtered else set()
    mats = [_action_matrix(x, keys, n) for i, x in enumerate(real.basis) if i not in torus]
    m = np.vstack(mats) if mats else np.zeros((0, len(keys)), dtype=complex)
    dims = {t: _null_space(m, t).shape[1] for t in STABILITY_TOLS}
    stable = len(set(dims.values())) == 1
    ns = _null_space(m, rtol)
    if ns.shape[1] == 0:
        return InvariantSpace((a, b), [], True, stable)
    basis_rows = rref(ns.T)
    exact_basis = _exact_realization_basis(real)
    rounded = [from_vector(keys, [round_exact(c) if c else 0 for c in row], n, exact=True)
               for row in basis_rows]
    ok, res = _verify(real, rounded, exact_basis)
    if ok:
        return InvariantSpace((a, b), rounded, exact_basis is not None, stable, res)
    floats = [from_vector(keys, row, n, exact=False).prune(1e-13) for row in basis_rows]
    ok, res = _verify(real, floats, None)
    if not ok:
        warnings.warn(f"invariant basis of bidegree {(a, b)} fails verification ({res:.2e})")
    return InvariantSpace((a, b), floats, False, stable and ok, res)


@dataclass
class InvariantCatalog:
    """All invariant spaces of bidegree (a, b) with a + b <= cap."""

    cap: int
    spaces: dict[tuple[int, int], InvariantSpace] = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        return all(s.stable for s in self.spaces.values())

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.spaces.values())

    def polys(self, max_degree: int | None = None) -> list[PolyVR]:
        cap = self.cap if max_degree is None else max_degree
        return [p for (a, b), s in self.spaces.items() if a + b <= cap for p in s.basis]

    def dims(self) -> dict[str, int]:
        return {f"{a},{b}": s.dim for (a, b), s in self.spaces.items()}


def invariant_catalog(real: MatrixRealization, cap: int) -> InvariantCatalog:
    return _cached_catalog(real, cap)


@lru_cache(maxsize=64)
def _cached_catalog(real: MatrixRealization, cap: int) -> InvariantCatalog:
    cat = InvariantCatalog(cap)
    for a, b in bidegrees_up_to(cap):
        cat.spaces[(a, b)] = invariant_space(real, a, b)
    return cat


def real_forms(polys: list[PolyVR]) -> list[PolyVR]:
    """Real and imaginary parts (p + conj p)/2, (p - conj p)/2i, dropping zeros."""
    out = []
    for p in polys:
        re = (p + p.conj()).scale(0.5)
        im = (p - p.conj()).scale(-0.5j)
        out.extend(q for q in (re, im) if q.max_abs() > 1e-12)
    return out


def group_invariance_residual(real: MatrixRealization, p: PolyVR, trials: int = 5, seed: int = 0) -> float:
    """max |p(kz) - p(z)| / (1 + |p(z)|) over Haar samples k and Gaussian z."""
    rng = np.random.default_rng(seed)
    f = p.evaluator()
    worst = 0.0
    for t in range(trials):
        k = haar_sample(real, rng)
        z = rng.standard_normal(real.dimV) + 1j * rng.standard_normal(real.dimV)
        v0, v1 = f(z[None])[0], f((k @ z)[None])[0]
        worst = max(worst, abs(v1 - v0) / (1 + abs(v0)))
    return worst
