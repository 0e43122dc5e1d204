"""The moment map tau(z)(A) = omega(z, Az) and tangent spaces of K-orbits."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..lie.coadjoint import DualElement, InvariantPolySet, ad_star, invariant_polys
from ..lie.realization import MatrixRealization, realify
from ..weyl_algebra.polynomials import PolyVR, to_exact

RANK_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class MomentValue:
    coords: np.ndarray
    # largest |Re <z, A_i z>|; the sesquilinear value is purely imaginary
    residual: float

    def as_dual(self) -> DualElement:
        return DualElement(self.coords)


def tau(real: MatrixRealization, z) -> MomentValue:
    z = np.asarray(z, dtype=complex)
    if z.shape != (real.dimV,):
        raise ValueError(f"vector of length {z.shape} does not lie in V = C^{real.dimV}")
    az = real.basis_array @ z
    # <z, w> = sum z_k conj(w_k), linear in the first slot
    vals = az.conj() @ z
    return MomentValue(vals.imag.copy(), float(np.abs(vals.real).max(initial=0.0)))


def tau_coords(real: MatrixRealization, z) -> np.ndarray:
    az = real.basis_array @ np.asarray(z, dtype=complex)
    return (az.conj() @ z).imag


def equivariance_residual(real: MatrixRealization, z, k: np.ndarray) -> float:
    """||tau(kz) - Ad*(k) tau(z)|| / (1 + ||tau(z)||)."""
    t = tau(real, z).coords
    lhs = tau(real, k @ np.asarray(z, dtype=complex)).coords
    rhs = ad_star(real, k, DualElement(t)).coords
    return float(np.linalg.norm(lhs - rhs) / (1 + np.linalg.norm(t)))


def numerical_rank(m: np.ndarray, rtol: float = RANK_RTOL) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def orbit_tangent(real: MatrixRealization, z) -> np.ndarray:
    """Real (2 dimV) x dimK matrix whose columns are the realified A_i z."""
    az = real.basis_array @ np.asarray(z, dtype=complex)
    return np.array([realify(v) for v in az]).T


def orbit_dim(real: MatrixRealization, z, rtol: float = RANK_RTOL) -> int:
    return numerical_rank(orbit_tangent(real, z), rtol)


def tau_polys(real: MatrixRealization) -> list[PolyVR]:
    """tau_i as polynomials: -i * sum_kl conj(A_i)_kl z_k conj(z_l).

    Exact (Gaussian rational) when the basis entries are.
    """
    n = real.dimV
    out = []
    for a in real.basis:
        terms = {}
        for k in range(n):
            for l in range(n):
                if a[k, l] != 0:
                    ka = [0] * n
                    ka[k] = 1
                    lb = [0] * n
                    lb[l] = 1
                    c = -1j * np.conj(a[k, l])
                    terms[(tuple(ka), tuple(lb))] = to_exact(c) if to_exact(c) is not None else complex(c)
        out.append(PolyVR(terms, n, exact=None).prune() if terms else PolyVR.zero(n))
    return out


def pulled_back_generators(real: MatrixRealization, inv: InvariantPolySet | None = None) -> list[PolyVR]:
    """The polynomials q_j(z) = p_j(tau(z)) on V_R."""
    inv = inv or invariant_polys(real.group_spec)
    taus = tau_polys(real)
    return [q.prune() if isinstance(q, PolyVR) else PolyVR.const(real.dimV, q)
            for q in inv.evaluate_generic(taus)]
