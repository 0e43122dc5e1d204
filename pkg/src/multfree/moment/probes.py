"""Optimization probes: fibres of tau over coadjoint orbits, and orbit membership in tau(V).

Coadjoint orbits of the supported groups are determined by the values of the
invariant generators, so "tau(z) lies on the orbit of alpha" becomes the
equation invariants(tau(z)) = invariants(alpha), solved by nonlinear least
squares from several random starts.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import least_squares

from ..lie.coadjoint import DualElement, InvariantPolySet, invariant_polys
from ..lie.realization import MatrixRealization, complexify, realify
from .invariants import invariant_catalog, real_forms
from .tau import tau_coords

OBJECTIVE_TOL = 1e-10
REACHED_TOL = 1e-8
CLUSTER_TOL = 1e-6
SEPARATING_DEGREE = 4


def _scaled_residual(real: MatrixRealization, inv: InvariantPolySet, target: np.ndarray):
    scale = 1.0 + np.abs(target)
    return lambda x: (inv.evaluate(tau_coords(real, complexify(x))) - target) / scale


@dataclass
class SolveOutcome:
    z: np.ndarray
    residual: float  # max scaled residual
    objective: float  # sum of squared scaled residuals
    converged: bool


def solve_invariant_equations(real: MatrixRealization, target: np.ndarray, starts: int,
                              seed: int, scale: float = 1.0, inv: InvariantPolySet | None = None,
                              include_origin: bool = False) -> list[SolveOutcome]:
    """Minimize sum_j ((q_j(z) - t_j) / (1 + |t_j|))^2 from ``starts`` random points."""
    inv = inv or invariant_polys(real.group_spec)
    f = _scaled_residual(real, inv, np.asarray(target, dtype=float))
    rng = np.random.default_rng(seed)
    n = real.dimV_R
    out = []
    if include_origin:
        r0 = f(np.zeros(n))
        out.append(_outcome(np.zeros(n), r0))
    for _ in range(starts):
        x0 = rng.standard_normal(n) * scale / np.sqrt(n)
        sol = least_squares(f, x0, jac="3-point", method="trf", xtol=1e-15, ftol=1e-15,
                            gtol=1e-15, max_nfev=2000)
        out.append(_outcome(sol.x, f(sol.x)))
    return out


def _outcome(x, r) -> SolveOutcome:
    obj = float(r @ r)
    return SolveOutcome(complexify(x), float(np.abs(r).max(initial=0.0)), obj, obj <= OBJECTIVE_TOL)


def _start_scale(real: MatrixRealization, inv: InvariantPolySet, target: np.ndarray) -> float:
    """Radius at which tau's invariants have roughly the target's magnitude."""
    degs = np.array(inv.degrees, dtype=float)
    mags = np.abs(target)
    if not np.any(mags > 0):
        return 1.0
    # q_j is homogeneous of degree 2 deg p_j in z
    radii = mags[mags > 0] ** (1 / (2 * degs[mags > 0]))
    return float(np.median(radii)) * np.sqrt(real.dimV_R)


@dataclass
class FiberProbeResult:
    verdict: str  # single_orbit | multiple_orbits | inconclusive
    cluster_count: int
    converged: int
    starts: int
    finite_to_one: bool | None = None
    note: str = ""
    cluster_sizes: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "cluster_count": self.cluster_count,
            "converged": self.converged,
            "starts": self.starts,
            "objective_tol": OBJECTIVE_TOL,
            "cluster_tol": CLUSTER_TOL,
            "note": self.note,
        }


def separating_invariants(real: MatrixRealization, degree: int = SEPARATING_DEGREE):
    """Real-valued K-invariants on V_R of degree <= ``degree``, as vectorized evaluators."""
    polys = real_forms([p for p in invariant_catalog(real, degree).polys() if p.degree > 0])
    return [p.evaluator() for p in polys]


def fiber_orbit_probe(real: MatrixRealization, z0, start_count: int = 32, seed: int = 0,
                      finite_to_one: bool | None = None) -> FiberProbeResult:
    """Estimate the number of K-orbits in tau^{-1}(orbit of tau(z0)).

    Converged points are clustered by the values of separating invariants;
    the count is meaningful only for finite-to-one actions.
    """
    z0 = np.asarray(z0, dtype=complex)
    inv = invariant_polys(real.group_spec)
    target = inv.evaluate(tau_coords(real, z0))
    sols = solve_invariant_equations(real, target, start_count, seed,
                                     scale=np.linalg.norm(z0) or 1.0, inv=inv)
    good = [s for s in sols if s.converged]
    note = "" if finite_to_one is not False else "action is not finite-to-one; count is only evidence"
    if len(good) * 2 < start_count or not good:
        return FiberProbeResult("inconclusive", 0, len(good), start_count, finite_to_one,
                                "more than half of the starts did not converge")
    sep = separating_invariants(real)
    points = np.array([s.z for s in good])
    ref = np.array([f(z0[None])[0].real for f in sep])
    feats = np.array([f(points).real for f in sep]).T / (1.0 + np.abs(ref))
    if len(good) == 1:
        labels = np.array([1])
    else:
        labels = fcluster(linkage(feats, "single"), CLUSTER_TOL, "distance")
    sizes = sorted(np.bincount(labels)[1:].tolist(), reverse=True)
    sizes = [s for s in sizes if s]
    count = len(sizes)
    verdict = "single_orbit" if count == 1 else "multiple_orbits"
    return FiberProbeResult(verdict, count, len(good), start_count, finite_to_one, note, sizes)


@dataclass
class ImageProbeResult:
    verdict: str  # reached | not_reached
    residual: float
    witness: np.ndarray | None
    starts: int
    # not_reached only records an optimizer failure, never non-membership
    certifying: bool = True

    @property
    def reached(self) -> bool:
        return self.verdict == "reached"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "residual": self.residual,
            "reached_tol": REACHED_TOL,
            "certifying": self.certifying,
            "witness": None if self.witness is None else realify(self.witness).tolist(),
        }


def orbit_in_image_probe(real: MatrixRealization, alpha: DualElement | np.ndarray,
                         starts: int = 32, seed: int = 0) -> ImageProbeResult:
    """Search for z with tau(z) on the coadjoint orbit of alpha."""
    coords = alpha.coords if isinstance(alpha, DualElement) else np.asarray(alpha, dtype=float)
    inv = invariant_polys(real.group_spec)
    target = inv.evaluate(coords)
    sols = solve_invariant_equations(real, target, starts, seed, _start_scale(real, inv, target),
                                     inv, include_origin=True)
    best = min(sols, key=lambda s: s.residual)
    if best.residual <= REACHED_TOL:
        return ImageProbeResult("reached", best.residual, best.z, starts, True)
    return ImageProbeResult("not_reached", best.residual, None, starts, False)
