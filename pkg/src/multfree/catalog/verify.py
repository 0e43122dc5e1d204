"""Per-action verification reports.

Each report is a JSON object with a fixed field order; ``wall_time`` is
always the last field so that two runs can be compared after dropping it.
"""
from __future__ import annotations

import json
import time
from pathlib import Path

import numpy as np

from .. import __version__
from ..characters.decompose import multiplicity_free_check
from ..errors import UnsupportedError
from ..heisenberg import orbit_intersection_check
from ..lie.coadjoint import DualElement, ad_star, invariant_polys
from ..lie.realization import MatrixRealization, haar_sample
from ..moment.capelli import MAX_CAP as CAPELLI_MAX_CAP, capelli_probe
from ..moment.probes import fiber_orbit_probe
from ..moment.rank import RANK_RTOL, finite_to_one_verdict
from ..moment.tau import equivariance_residual, tau
from .registry import ActionSpec, find, registry_load

EXIT_OK, EXIT_DISAGREE, EXIT_ERROR = 0, 1, 2

EQUIVARIANCE_TOL = 1e-10
BRACKET_TOL = 1e-12
HOMOGENEITY_TOL = 1e-12
INVARIANCE_TOL = 1e-10
HEISENBERG_CONSTANT = -2.0


def property_suite(real: MatrixRealization, trials: int = 100, seed: int = 0) -> dict:
    """Structural properties, each with its observed worst value and tolerance."""
    rng = np.random.default_rng(seed)
    inv = invariant_polys(real.group_spec)
    eq = hom = invariance = 0.0
    n = real.dimV
    for _ in range(trials):
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        k = haar_sample(real, rng)
        eq = max(eq, equivariance_residual(real, z, k))
        c = rng.uniform(-2, 2)
        hom = max(hom, float(np.abs(tau(real, c * z).coords - c * c * tau(real, z).coords).max()))
        xi = DualElement(rng.standard_normal(real.dimK))
        p0 = inv.evaluate(xi)
        p1 = inv.evaluate(ad_star(real, k, xi))
        invariance = max(invariance, float(np.abs(p1 - p0).max() / (1 + np.abs(p0).max())))
    checks = {
        "bracket_closure": (real.bracket_residual(), BRACKET_TOL),
        "equivariance": (eq, EQUIVARIANCE_TOL),
        "homogeneity": (hom, HOMOGENEITY_TOL),
        "coadjoint_invariance": (invariance, INVARIANCE_TOL),
    }
    return {name: {"value": v, "tol": t, "pass": bool(v <= t)} for name, (v, t) in checks.items()}


def analyze(entry: ActionSpec, max_degree: int = 4, samples: int = 64, starts: int = 32,
            seed: int = 0, rank_rtol: float = RANK_RTOL, heis_trials: int = 4) -> dict:
    """Run every engine on one supported action and assemble its report."""
    t0 = time.perf_counter()
    if not entry.supported:
        raise UnsupportedError(f"{entry.name}: unsupported factor in {entry.group_text} (metadata-only entry)")
    real = entry.realization()
    mf = multiplicity_free_check(real, max_degree)
    fto, rank = finite_to_one_verdict(real, samples, seed, rank_rtol)
    agree = fto is not None and fto == mf.multiplicity_free
    cap = min(max_degree, CAPELLI_MAX_CAP)
    cap_res = capelli_probe(real, cap)
    props = property_suite(real, seed=seed)
    props["dimension_conservation"] = {
        "value": int(max(abs(r) for r in mf.decomposition.dimension_residuals())), "tol": 0,
        "pass": all(r == 0 for r in mf.decomposition.dimension_residuals())}
    props["rank_bound"] = {"value": int(sum(r > c for r, c in rank.per_sample)), "tol": 0,
                           "pass": rank.invariant_holds}
    # orbit-intersection formula at the orbit of tau(z0) / (c lam), lam = 1
    rng = np.random.default_rng(seed)
    z0 = rng.standard_normal(real.dimV) + 1j * rng.standard_normal(real.dimV)
    alpha = tau(real, z0).coords / HEISENBERG_CONSTANT
    heis = orbit_intersection_check(real, alpha, 1.0, heis_trials, seed, constant=HEISENBERG_CONSTANT)
    rate = heis.direction_i_pass_rate
    fiber = fiber_orbit_probe(real, z0, starts, seed, finite_to_one=fto)
    props["orbit_intersection"] = {"value": rate, "tol": 1.0, "pass": rate is None or rate == 1.0}
    expectation = None if entry.expected_mf is None else entry.expected_mf == mf.multiplicity_free
    capelli_ok = cap_res.surjective if entry.is_capelli else True
    passed = agree and all(p["pass"] for p in props.values()) and expectation is not False and capelli_ok
    report = {
        "action": entry.name,
        "group": entry.group_text,
        "rep": entry.rep_tag,
        "tool_version": __version__,
        "seed": seed,
        "expected_mf": entry.expected_mf,
        "mf": {
            "verdict": mf.summary(),
            "multiplicity_free": mf.multiplicity_free,
            "max_degree": max_degree,
            "arithmetic": "exact",
            "violations": [v.describe() for v in mf.violations],
            "expectation_matched": expectation,
        },
        "rank": {**rank.as_dict(), "generic_only": True},
        "crosscheck": {"multiplicity_free": mf.multiplicity_free, "finite_to_one": fto, "agree": agree},
        "capelli": {**cap_res.as_dict(), "capelli_row": entry.capelli_row},
        "fiber_probe": fiber.as_dict(),
        "orbit_intersection": heis.as_dict(),
        "properties": props,
        "status": "pass" if passed else "fail",
        "wall_time": round(time.perf_counter() - t0, 3),
    }
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serializable: {type(o).__name__}")


def strip_wall_time(text: str) -> str:
    """Report text without wall-time fields, for reproducibility comparisons."""
    data = json.loads(text)
    data.pop("wall_time", None)
    for item in data.get("actions", []):
        item.pop("wall_time", None)
    return json.dumps(data, indent=2)


def run_verify(names: list[str] | None = None, max_degree: int = 4, samples: int = 64,
               starts: int = 32, seed: int = 0, out: str | Path | None = None,
               registry: str | Path | None = None, rank_rtol: float = RANK_RTOL,
               log=None) -> tuple[int, list[dict]]:
    """Verify the named actions (default: all supported) and write reports.

    Returns (exit code, reports): 0 when every crosscheck agrees and every
    property passes, 1 on any disagreement or violation, 2 on operational errors.
    """
    t0 = time.perf_counter()
    entries = registry_load(registry)
    chosen = [find(entries, n) for n in names] if names else [e for e in entries if e.supported]
    for e in chosen:
        if not e.supported:
            raise UnsupportedError(f"{e.name}: unsupported factor in {e.group_text} (metadata-only entry)")
    reports = []
    outdir = Path(out) if out is not None else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    for e in chosen:
        rep = analyze(e, max_degree, samples, starts, seed, rank_rtol)
        reports.append(rep)
        if log:
            log(f"{e.name}: {rep['status']} ({rep['wall_time']:.1f}s)")
        if outdir is not None:
            (outdir / f"{e.name}.json").write_text(dumps(rep))
    code = EXIT_OK if all(r["status"] == "pass" for r in reports) else EXIT_DISAGREE
    if outdir is not None:
        index = {
            "tool_version": __version__,
            "seed": seed,
            "max_degree": max_degree,
            "samples": samples,
            "actions": [{"action": r["action"], "file": f"{r['action']}.json",
                         "agree": r["crosscheck"]["agree"], "status": r["status"]} for r in reports],
            "exit_code": code,
            "wall_time": round(time.perf_counter() - t0, 3),
        }
        (outdir / "index.json").write_text(dumps(index))
    return code, reports
