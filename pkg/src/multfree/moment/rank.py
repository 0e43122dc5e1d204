"""Generic-rank test for "tau is finite-to-one on K-orbits".

At a generic z the pulled-back invariants q_j = p_j o tau have Jacobian rank
equal to the codimension of the orbit Kz exactly when the fibres of
q = (q_1, ..., q_m), which are unions of K-orbits, are finite unions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..characters.decompose import multiplicity_free_check
from ..lie.coadjoint import invariant_polys
from ..lie.realization import MatrixRealization, complexify
from .tau import RANK_RTOL, numerical_rank, orbit_dim, tau_coords

FD_STEP = 1e-5
FD_CHECK_STEP = 1e-6
FD_AGREEMENT = 1e-4
GENERIC_FRACTION = 0.9


def pullback_map(real: MatrixRealization, inv=None):
    """x in R^(2 dimV) -> (q_1(z), ..., q_m(z))."""
    inv = inv or invariant_polys(real.group_spec)
    return lambda x: inv.evaluate(tau_coords(real, complexify(x)))


def central_jacobian(f, x: np.ndarray, h: float) -> np.ndarray:
    cols = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        cols.append((f(x + e) - f(x - e)) / (2 * h))
    return np.array(cols).T


def _row_normalized_rank(jac: np.ndarray, rtol: float) -> int:
    norms = np.linalg.norm(jac, axis=1)
    if norms.size == 0 or norms.max() == 0:
        return 0
    keep = norms > 1e-9 * norms.max()
    return numerical_rank(jac[keep] / norms[keep, None], rtol)


@dataclass
class RankReport:
    samples: int
    pullback_rank: int
    orbit_codim: int
    verdict: str  # finite_to_one | not_finite_to_one | inconclusive
    per_sample: list[tuple[int, int]] = field(default_factory=list)  # (rank, codim)
    fd_agreement: float = 0.0
    tol: float = RANK_RTOL
    seed: int | None = None

    @property
    def invariant_holds(self) -> bool:
        return all(r <= c for r, c in self.per_sample)

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "pullback_rank": self.pullback_rank,
            "orbit_codim": self.orbit_codim,
            "verdict": self.verdict,
            "generic_fraction": self.generic_fraction,
            "fd_step_agreement": self.fd_agreement,
            "rank_rtol": self.tol,
            "seed": self.seed,
        }

    @property
    def generic_fraction(self) -> float:
        if not self.per_sample:
            return 0.0
        return sum(r == c for r, c in self.per_sample) / len(self.per_sample)


def pullback_jacobian_rank(real: MatrixRealization, sample_count: int = 64, seed: int = 0,
                           rtol: float = RANK_RTOL) -> RankReport:
    inv = invariant_polys(real.group_spec)
    q = pullback_map(real, inv)
    rng = np.random.default_rng(seed)
    n = real.dimV_R
    per_sample, worst_fd = [], 0.0
    max_rank, max_orbit = 0, 0
    for _ in range(sample_count):
        x = rng.standard_normal(n)
        j1 = central_jacobian(q, x, FD_STEP)
        j2 = central_jacobian(q, x, FD_CHECK_STEP)
        scale = max(np.abs(j1).max(), 1e-300)
        worst_fd = max(worst_fd, float(np.abs(j1 - j2).max() / scale))
        r = _row_normalized_rank(j1, rtol)
        od = orbit_dim(real, complexify(x), rtol)
        per_sample.append((r, n - od))
        max_rank, max_orbit = max(max_rank, r), max(max_orbit, od)
    codim = n - max_orbit
    equal = sum(r == c for r, c in per_sample) / max(sample_count, 1)
    below = sum(r < c for r, c in per_sample) / max(sample_count, 1)
    if worst_fd > FD_AGREEMENT or sample_count == 0:
        verdict = "inconclusive"
    elif equal >= GENERIC_FRACTION:
        verdict = "finite_to_one"
    elif below >= GENERIC_FRACTION:
        verdict = "not_finite_to_one"
    else:
        verdict = "inconclusive"
    return RankReport(sample_count, max_rank, codim, verdict, per_sample, worst_fd, rtol, seed)


def finite_to_one_verdict(real: MatrixRealization, samples: int = 64, seed: int = 0,
                          rtol: float = RANK_RTOL) -> tuple[bool | None, RankReport]:
    rep = pullback_jacobian_rank(real, samples, seed, rtol)
    value = {"finite_to_one": True, "not_finite_to_one": False}.get(rep.verdict)
    return value, rep


@dataclass
class Crosscheck:
    multiplicity_free: bool
    mf_summary: str
    max_degree: int
    finite_to_one: bool | None
    rank: RankReport
    agree: bool

    def as_dict(self) -> dict:
        return {
            "multiplicity_free": self.multiplicity_free,
            "mf_summary": self.mf_summary,
            "max_degree": self.max_degree,
            "finite_to_one": self.finite_to_one,
            "rank": self.rank.as_dict(),
            "agree": self.agree,
        }


def mf_rank_crosscheck(real: MatrixRealization, max_degree: int = 4, samples: int = 64,
                        seed: int = 0, rtol: float = RANK_RTOL) -> Crosscheck:
    """Exact MF verdict versus the generic rank verdict; never reconciled silently."""
    mf = multiplicity_free_check(real, max_degree)
    fto, rep = finite_to_one_verdict(real, samples, seed, rtol)
    agree = fto is not None and fto == mf.multiplicity_free
    return Crosscheck(mf.multiplicity_free, mf.summary(), max_degree, fto, rep, agree)
