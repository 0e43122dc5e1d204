"""Command-line entry point: ``multfree <command> [options]``.

Exit codes: 0 pass, 1 mathematical disagreement or violation, 2 operational error.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .catalog.registry import find, registry_load
from .catalog.verify import EXIT_DISAGREE, EXIT_ERROR, EXIT_OK, dumps, run_verify
from .errors import CrossValidationError, RegistryError, UnsupportedError

DEFAULT_SEED = 20240601


def _emit(args, payload: dict, rows: list[tuple] | None = None, header: tuple | None = None) -> None:
    if args.format == "json" or rows is None:
        sys.stdout.write(dumps(payload))
        return
    table = [tuple(str(c) for c in header)] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


def _entry(args):
    if not args.action:
        raise RegistryError("--action is required")
    e = find(registry_load(args.registry), args.action)
    if not e.supported:
        raise UnsupportedError(f"{e.name}: unsupported factor in {e.group_text} (metadata-only entry)")
    return e


def cmd_actions(args) -> int:
    entries = registry_load(args.registry)
    payload = {"actions": [{"name": e.name, "group": e.group_text, "rep": e.rep_tag,
                            "supported": e.supported, "expected_mf": e.expected_mf,
                            "capelli_row": e.capelli_row, "notes": e.notes} for e in entries]}
    rows = [(e.name, e.group_text, e.rep_tag, e.supported, e.expected_mf, e.capelli_row or "-")
            for e in entries]
    _emit(args, payload, rows, ("name", "group", "rep", "supported", "expected_mf", "capelli_row"))
    return EXIT_OK


def cmd_mfcheck(args) -> int:
    from .characters.decompose import multiplicity_free_check

    e = _entry(args)
    v = multiplicity_free_check(e.realization(), args.max_degree)
    payload = {"action": e.name, "verdict": v.summary(), "multiplicity_free": v.multiplicity_free,
               "max_degree": args.max_degree,
               "by_degree": [{"degree": d, "labels": [[list(l), m] for l, m in sorted(c.items(), reverse=True)]}
                             for d, c in enumerate(v.decomposition.by_degree)],
               "dimension_residuals": v.decomposition.dimension_residuals()}
    rows = [(d, ", ".join(f"{l}x{m}" for l, m in sorted(c.items(), reverse=True)))
            for d, c in enumerate(v.decomposition.by_degree)] + [("verdict", v.summary())]
    _emit(args, payload, rows, ("degree", "labels"))
    ok = e.expected_mf is None or e.expected_mf == v.multiplicity_free
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_momentrank(args) -> int:
    from .moment.rank import mf_rank_crosscheck

    e = _entry(args)
    c = mf_rank_crosscheck(e.realization(), args.max_degree, args.samples, args.seed, args.tol)
    payload = {"action": e.name, **c.as_dict()}
    r = c.rank
    rows = [("pullback_rank", r.pullback_rank), ("orbit_codim", r.orbit_codim), ("verdict", r.verdict),
            ("generic_fraction", r.generic_fraction), ("mf", c.mf_summary), ("agree", c.agree)]
    _emit(args, payload, rows, ("field", "value"))
    return EXIT_OK if c.agree else EXIT_DISAGREE


def cmd_verify(args) -> int:
    code, reports = run_verify(args.action_list or None, args.max_degree, args.samples, args.starts,
                               args.seed, args.out, args.registry, args.tol,
                               log=lambda m: print(m, file=sys.stderr))
    rows = [(r["action"], r["mf"]["verdict"], r["rank"]["verdict"], r["crosscheck"]["agree"],
             r["capelli"]["verdict"], r["status"]) for r in reports]
    payload = {"exit_code": code, "reports": reports}
    _emit(args, payload, rows, ("action", "mf", "rank", "agree", "capelli", "status"))
    return code


def cmd_capelli(args) -> int:
    from .moment.capelli import capelli_probe

    e = _entry(args)
    res = capelli_probe(e.realization(), args.max_degree)
    payload = {"action": e.name, **res.as_dict()}
    rows = [(k, v) for k, v in res.as_dict().items()]
    _emit(args, payload, rows, ("field", "value"))
    if e.is_capelli and not res.surjective:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_orbit_check(args) -> int:
    from .heisenberg import measure_constant, orbit_intersection_check
    from .moment.tau import tau

    e = _entry(args)
    real = e.realization()
    c, spread = measure_constant(seed=args.seed)
    rng = np.random.default_rng(args.seed)
    z0 = rng.standard_normal(real.dimV) + 1j * rng.standard_normal(real.dimV)
    lam = args.lam
    rep = orbit_intersection_check(real, tau(real, z0).coords / (c * lam), lam, args.starts, args.seed, c)
    payload = {"action": e.name, "lambda": lam, "fit_spread": spread, **rep.as_dict()}
    rows = [("constant", rep.constant), ("direction_i_pass_rate", rep.direction_i_pass_rate),
            ("direction_ii_pass_rate", rep.direction_ii_pass_rate), ("note", rep.note or "-")]
    _emit(args, payload, rows, ("field", "value"))
    ok = rep.direction_i_pass_rate in (None, 1.0)
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_spectrum(args) -> int:
    from .catalog.spectrum import spectrum_s2_analysis

    rep = spectrum_s2_analysis(args.n, args.max_size, seed=args.seed)
    rows = [(d, t, rep.probe_results.get(d, {}).get("verdict", "-")) for d, t in rep.tags.items()]
    _emit(args, rep.as_dict(), rows, ("diagram", "tag", "image_probe"))
    return EXIT_OK


def cmd_heis_test(args) -> int:
    from .heisenberg import heisenberg_suite

    e = _entry(args)
    res = heisenberg_suite(e.realization(), args.starts, args.seed)
    rows = [(k, v["value"], v["tol"], v["pass"]) for k, v in res.items()]
    _emit(args, {"action": e.name, "checks": res}, rows, ("check", "value", "tol", "pass"))
    return EXIT_OK if all(v["pass"] for v in res.values()) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multfree", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--action", help="registry entry name")
    common.add_argument("--max-degree", type=int, default=4, help="degree bound D (default 4)")
    common.add_argument("--samples", type=int, default=64, help="rank-test samples (default 64)")
    common.add_argument("--starts", type=int, default=32, help="optimizer starts / trials (default 32)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--tol", type=float, default=1e-8, help="relative rank tolerance")
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--out", help="directory for JSON reports")
    common.add_argument("--registry", help="registry file (default: built-in)")
    sub = p.add_subparsers(dest="command", required=True)

    actions = sub.add_parser("actions", parents=[common], help="registry operations")
    actions.add_argument("what", choices=("list",))
    actions.set_defaults(func=cmd_actions)
    sub.add_parser("mfcheck", parents=[common], help="exact multiplicity-free check").set_defaults(func=cmd_mfcheck)
    sub.add_parser("momentrank", parents=[common], help="generic rank test and crosscheck").set_defaults(
        func=cmd_momentrank)
    v = sub.add_parser("verify", parents=[common], help="full verification with reports")
    v.set_defaults(func=cmd_verify)
    sub.add_parser("capelli", parents=[common], help="surjectivity of the pullback").set_defaults(func=cmd_capelli)
    oc = sub.add_parser("orbit-check", parents=[common], help="orbit-intersection formula")
    oc.add_argument("--lam", type=float, default=1.0)
    oc.set_defaults(func=cmd_orbit_check)
    sp = sub.add_parser("spectrum", parents=[common], help="spectrum versus image for U(n) on S^2(C^n)")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--max-size", type=int, default=6)
    sp.set_defaults(func=cmd_spectrum)
    sub.add_parser("heis-test", parents=[common], help="Heisenberg group property checks").set_defaults(
        func=cmd_heis_test)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        args.action_list = [args.action] if args.action else []
    try:
        return args.func(args)
    except (UnsupportedError, RegistryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CrossValidationError as exc:
        print(f"cross-validation failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
