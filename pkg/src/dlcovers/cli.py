"""Command-line front end: one subcommand per computation, JSON reports on stdout.

Exit codes: 0 success (verdicts are data, a non-maximal curve is still 0),
2 bad input or unmet precondition, 3 refused by the enumeration guard rail.
Progress of long enumerations goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from sympy import divisors

from . import __version__
from . import acceptance, curves, identity, rcf, semigroup
from . import count as C
from .errors import DlcoversError, GuardRailError, UsageError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_GUARD_RAIL = 3


def _spec(args) -> curves.CurveSpec:
    if args.family is None or args.q is None:
        raise UsageError(f"{args.command} needs --family and --q")
    return curves.make_spec(args.family, args.q, args.exponent, degree=getattr(args, "degree", None))


def _ext(args, spec) -> int:
    return args.ext if args.ext is not None else spec.d


def cmd_count(args, ctx):
    spec = _spec(args)
    e = _ext(args, spec)
    rep = C.count_points(spec, e, workers=args.workers, force=args.force, degrees=args.degrees,
                         progress=args.progress)
    ctx["moduli"] = rep.moduli
    return spec, rep.payload()


def cmd_maximal(args, ctx):
    spec = _spec(args)
    e = _ext(args, spec)
    curves.sqrt_q_power(spec.q, e)  # maximality needs an integral q^(e/2)
    rep = C.count_points(spec, e, workers=args.workers, force=args.force, progress=args.progress)
    ctx["moduli"] = rep.moduli
    return spec, {"extension": e, "N": rep.total, "hasse_weil_bound": rep.hasse_weil_bound,
                  "maximal": rep.maximal, "deficiency": rep.deficiency}


def cmd_degrees(args, ctx):
    spec = _spec(args)
    r = _ext(args, spec)
    counts = {str(e): C.points_of_degree(spec, e, workers=args.workers, force=args.force)
              for e in divisors(r)}
    out = {"degree": r, "points_of_degree": counts}
    if spec.family in curves.BASE_FAMILIES:
        orb = curves.short_orbit_sizes(spec)
        if orb.tame_degree == r:
            out["predicted_tame_orbit"] = orb.tame
            out["matches_prediction"] = counts[str(r)] == orb.tame
    return spec, out


def cmd_genus(args, ctx):
    spec = _spec(args)
    ctx["flags"] = curves.genus_audit_flags(spec)
    return spec, {"genus": curves.genus(spec), "displayed_closed_form": curves.displayed_cover_genus(spec)}


def cmd_orbits(args, ctx):
    spec = _spec(args)
    orb = curves.short_orbit_sizes(spec)
    out = {"rational": orb.rational, "tame": orb.tame, "tame_degree": orb.tame_degree}
    if args.verify:
        out["measured_rational"] = C.total_count(spec, 1, workers=args.workers, force=args.force)
        out["measured_tame"] = C.points_of_degree(spec, orb.tame_degree, workers=args.workers,
                                                  force=args.force)
    return spec, out


def cmd_ramification(args, ctx):
    spec = _spec(args)
    return spec, curves.ramification_audit(spec).as_dict()


def cmd_semigroup(args, ctx):
    spec = None
    if args.generators:
        gens = [int(g) for g in args.generators.split(",")]
        source = "generators"
    else:
        if args.family is None:
            raise UsageError("semigroup needs --generators or --family/--q")
        spec = _spec(args)
        table = curves.pole_orders(spec)
        gens = table.values()
        source = "pole orders"
    S = semigroup.NumericalSemigroup.generated_by(gens)
    out = {"source": source, "generators": list(S.generators), "genus": S.genus,
           "frobenius": S.frobenius, "conductor": S.conductor, "memory_bytes": S.memory_bytes()}
    if spec is not None:
        g = curves.genus(spec)
        out["curve_genus"] = g
        out["matches_curve_genus"] = S.genus == g
        # only the Suzuki cover carries an equality claim; elsewhere informational
        out["claim_asserted"] = spec.base == "suzuki"
    return spec, out


def cmd_verify_identities(args, ctx):
    if args.family is None or args.q is None:
        raise UsageError("verify-identities needs --family and --q")
    fam = curves.ALIASES.get(args.family, args.family)
    if fam == "suzuki":
        results = identity.verify_suzuki_chain(args.q, perturb=args.perturb)
    elif fam == "ree":
        results = identity.verify_ree_chain(args.q, perturb=args.perturb, w8_form=args.w8_form)
    else:
        raise UsageError(f"identity chains exist for suzuki and ree, not {args.family!r}")
    out = {"identities": [r.payload() for r in results], "all_passed": all(r.passed for r in results)}
    if fam == "ree":
        out["w8_form"] = args.w8_form
        out["notes"] = ["w5 = y w3^{q0} - z w1^{q0} is defined next to v = x w3^{q0} - z w1^{q0} "
                        "but never used; only v enters w6 and w7"]
    if args.numeric_ext:
        base = curves.make_spec(fam, args.q)
        cover = curves.make_spec(f"{fam}-tilde", args.q)
        numeric = {}
        for name in identity.identity_names(fam):
            ident = identity.get_identity(name, fam)
            sp = cover if ident.uses_t else base
            bad, total = identity.evaluate_identity_at_points(
                name, sp, args.numeric_ext, perturb=(name == args.perturb),
                **({"w8_form": args.w8_form} if fam == "ree" else {}))
            numeric[name] = {"violations": bad, "points": total}
        out["numeric"] = {"extension": args.numeric_ext, "results": numeric}
    return curves.make_spec(fam, args.q), out


def cmd_rcf_check(args, ctx):
    spec = _spec(args)
    v = rcf.rcf_check(spec, workers=args.workers, force=args.force, progress=args.progress)
    return spec, v.payload()


def cmd_kummer_scan(args, ctx):
    d = args.ext if args.ext is not None else curves.default_degree(args.q)
    m = args.m
    if m is None:
        raise UsageError("kummer-scan needs --m")
    rows = rcf.kummer_scan(args.q, d, m, workers=args.workers)
    return None, {"q": args.q, "extension": d, "m": m, "rows": [r.payload() for r in rows]}


def cmd_tracezero(args, ctx):
    rep = rcf.hermitian_tracezero_analysis(args.q)
    return None, {**rep.payload(), "ok": rep.ok}


def cmd_audit_split(args, ctx):
    spec = _spec(args)
    audit = C.fiber_split_audit(spec, workers=args.workers, force=args.force, progress=args.progress)
    return spec, audit.payload()


def cmd_repro(args, ctx):
    items = [int(i) for i in args.items.split(",")] if args.items else None
    results = acceptance.run_items(items, extended=args.extended, workers=args.workers,
                                   progress=args.progress)
    for r in results:
        print(r.line(), file=sys.stderr)
    return None, {"items": [r.payload(args.timing) for r in results],
                  "all_passed": all(r.passed for r in results)}


COMMANDS = {
    "count": cmd_count, "maximal": cmd_maximal, "degrees": cmd_degrees, "genus": cmd_genus,
    "orbits": cmd_orbits, "ramification": cmd_ramification, "semigroup": cmd_semigroup,
    "verify-identities": cmd_verify_identities, "rcf-check": cmd_rcf_check,
    "kummer-scan": cmd_kummer_scan, "tracezero": cmd_tracezero, "audit-split": cmd_audit_split,
    "repro": cmd_repro,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="hermitian, suzuki, ree, gk, suzuki-tilde, ree-tilde, "
                                         "cyclic-cover(BASE,R) or kummer-line(R)")
    common.add_argument("--q", type=int)
    common.add_argument("--exponent", type=int, default=None, help="cover exponent")
    common.add_argument("--degree", type=int, default=None, help="ambient degree d for kummer-line")
    common.add_argument("--ext", type=int, default=None, help="extension degree e (default d)")
    common.add_argument("--workers", type=int, default=None, help="threads (default $DLCOVERS_WORKERS or 1)")
    common.add_argument("--force", action="store_true", help="lift the enumeration guard rail")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--progress", action="store_true", help="chunk progress on stderr")
    common.add_argument("--out", default=None, help="also write the report to this file")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false", help="JSON output (default)")
    fmt.add_argument("--human", dest="human", action="store_true", help="indented key: value output")
    common.set_defaults(human=False)

    ap = argparse.ArgumentParser(prog="dlcovers", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"dlcovers {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "count":
            sp.add_argument("--degrees", action="store_true", help="also count closed points by degree")
        if name == "orbits":
            sp.add_argument("--verify", action="store_true", help="measure the orbit sizes by counting")
        if name == "semigroup":
            sp.add_argument("--generators", default=None, help="comma-separated generators")
        if name == "verify-identities":
            sp.add_argument("--numeric-ext", type=int, default=None)
            sp.add_argument("--perturb", default=None, help="add 1 to this identity (negative control)")
            sp.add_argument("--w8-form", choices=identity.W8_FORMS, default="printed")
        if name == "kummer-scan":
            sp.add_argument("--m", type=int, default=None)
        if name == "repro":
            sp.add_argument("--extended", action="store_true", help="include the F_{27^6} items")
            sp.add_argument("--items", default=None, help="comma-separated item numbers")
    return ap


def _human(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_human(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _emit(report: dict, args) -> None:
    text = _human(report) if args.human else json.dumps(report, indent=2, sort_keys=False)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    workers = args.workers or C.default_workers()
    args.workers = workers
    ctx: dict = {"moduli": None, "flags": []}
    report = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": args.command}
    t0 = time.perf_counter()
    try:
        spec, payload = COMMANDS[args.command](args, ctx)
    except GuardRailError as exc:
        report["error"] = {"type": "guard-rail", "message": str(exc)}
        _emit(report, args)
        return EXIT_GUARD_RAIL
    except (DlcoversError, ValueError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(report, args)
        return EXIT_PRECONDITION
    if spec is not None:
        flags = ctx["flags"] or curves.genus_audit_flags(spec)
        ctx["flags"] = flags
    report["spec"] = spec.echo() if spec is not None else None
    report["moduli"] = ctx["moduli"]
    report["result"] = payload
    report["audit_flags"] = ctx["flags"]
    report["workers"] = workers
    report["wall_time"] = round(time.perf_counter() - t0, 3) if args.timing else None
    _emit(report, args)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
