"""Command-line front end.

Subcommands mirror the library: `classify`, `family`, `index`, `chow-certify`,
`basin`, `closed-orbit`, `replacements`, `divisor`, and the pinned golden
suite `paper-check`.  Output is a human-readable table by default and JSON
with --json; every rational is printed exactly as p/q in lowest terms.  The
environment variable GIT_CURVE_MAX_DEGREE overrides the slice-degree cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .basins import (
    BasinError,
    basin_membership,
    c_closed_orbit_rep,
    enumerate_c_replacements,
    h_closed_orbit_rep,
    is_c_closed_orbit,
    is_h_closed_orbit,
)
from .chow import CASES, ChowError, certify_unstable
from .divisors import (
    DivisorError,
    canonical_alpha_class,
    epsilon_of_m,
    lambda_n,
    moriwaki_decomposition,
    viehweg_class,
)
from .engine import EngineError, evaluate_slice, index_suite
from .families import (
    Configuration,
    FamilyError,
    OneParamSubgroup,
    build_broken_bead_config,
    build_closed_rosary_config,
    build_open_rosary_config,
    canonical_1ps,
    configuration_from_dict,
    torus_generators,
)
from .graphs import CurveGraph, CurveGraphError, arithmetic_genus, classify
from .monomials import MonomialOrder, monomial_str
from .paperchecks import fmt, manifest_json, run_paper_check

USAGE_ERROR = 2


class CliError(Exception):
    pass


def _read_graph(path: str) -> CurveGraph:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    try:
        return CurveGraph.from_dict(doc)
    except CurveGraphError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _build_family(args) -> Configuration:
    if args.family == "open-rosary":
        if args.g is None or args.r is None:
            raise CliError("open-rosary needs --g and --r")
        return build_open_rosary_config(args.g, args.r)
    if args.family == "closed-rosary":
        if args.r is None:
            raise CliError("closed-rosary needs --r")
        return build_closed_rosary_config(args.r)
    if args.family == "broken-bead":
        if args.r is None:
            raise CliError("broken-bead needs --r")
        return build_broken_bead_config(args.r)
    raise CliError(f"unknown family {args.family!r}")


def _resolve_config(args) -> Configuration:
    if getattr(args, "infile", None):
        try:
            with open(args.infile) as fh:
                return configuration_from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError, FamilyError, KeyError) as exc:
            raise CliError(f"cannot load configuration: {exc}") from exc
    if getattr(args, "family", None):
        return _build_family(args)
    raise CliError("provide --family or --in")


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


def _table(rows: list[tuple], header: tuple) -> str:
    cols = [header] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(row[i]) for row in cols) for i in range(len(header))]
    lines = []
    for k, row in enumerate(cols):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    g = _read_graph(args.infile)
    flags = classify(g)
    from .graphs import find_elliptic_bridges, find_elliptic_tails, find_rosaries

    witnesses = {
        "elliptic_tails": [sorted(t) for t in find_elliptic_tails(g)],
        "elliptic_bridges": [sorted(b) for b in find_elliptic_bridges(g)],
        "rosaries": [
            {"closed": r.closed, "beads": list(r.beads), "length": r.length}
            for r in find_rosaries(g)
        ],
    }
    payload = {
        "genus": arithmetic_genus(g),
        "flags": flags.as_dict(),
        "witnesses": witnesses,
    }
    rows = [(k, fmt(v)) for k, v in flags.as_dict().items()]
    human = (
        f"arithmetic genus: {payload['genus']}\n"
        + _table(rows, ("notion", "holds"))
        + "\n"
        + f"tails: {witnesses['elliptic_tails']}  bridges: {witnesses['elliptic_bridges']}"
    )
    _emit(args, payload, human)
    return 0


def cmd_family(args) -> int:
    cfg = _build_family(args)
    doc = cfg.to_dict()
    _emit(
        args,
        doc,
        json.dumps(doc, sort_keys=True, indent=2),
    )
    return 0


def _parse_weights(text: str, expected_len: int) -> OneParamSubgroup:
    try:
        weights = tuple(int(w) for w in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad --weights {text!r}") from exc
    if len(weights) != expected_len:
        raise CliError(f"--weights needs {expected_len} entries, got {len(weights)}")
    return OneParamSubgroup(weights)


def cmd_index(args) -> int:
    cfg = _resolve_config(args)
    if args.weights:
        rho = _parse_weights(args.weights, cfg.num_coordinates)
    else:
        rho = canonical_1ps(cfg)
    degrees = [int(m) for m in args.m.split(",")] if args.m else [2, 3]
    suite = index_suite(cfg, rho, degrees)
    payload = {
        "family": cfg.family,
        "params": dict(cfg.params),
        "genus": cfg.genus,
        "weights": list(rho.weights),
        "chow_sign": suite.chow_sign,
        "reports": [
            {
                "m": r.m,
                "weight_sum": fmt(r.weight_sum),
                "average": fmt(r.average),
                "mu": fmt(r.mu),
                "standard_count": r.standard_count,
                "expected_count": r.expected_count,
                "count_matches_hilbert": r.count_matches_hilbert,
            }
            for r in suite.reports
        ],
    }
    rows = [
        (r.m, fmt(r.weight_sum), fmt(r.average), fmt(r.mu), r.standard_count)
        for r in suite.reports
    ]
    human = _table(rows, ("m", "weight_sum", "average", "mu", "standard"))
    if suite.chow_sign is not None:
        human += f"\nchow sign: {suite.chow_sign:+d}" if suite.chow_sign else "\nchow sign: 0"
    if args.monomials:
        lines = []
        for m in degrees:
            block_rho = rho.restrict(cfg.parametrization.num_coordinates)
            sl = evaluate_slice(cfg, m, MonomialOrder(block_rho))
            lines.append(
                f"degree {m} initial: "
                + " ".join(monomial_str(mo) for mo in sl.initial_monomials())
            )
            lines.append(
                f"degree {m} standard: "
                + " ".join(monomial_str(mo) for mo in sl.standard_monomials())
            )
        human += "\n" + "\n".join(lines)
        payload["monomials"] = lines
    _emit(args, payload, human)
    return 0


def cmd_chow_certify(args) -> int:
    cert = certify_unstable(args.case, args.g)
    payload = {
        "case": cert.case,
        "lower_bound": fmt(cert.lower_bound),
        "threshold": fmt(cert.threshold),
        "verdict": cert.verdict,
    }
    human = (
        f"case: {cert.case}\nmultiplicity bound: {fmt(cert.lower_bound)}\n"
        f"threshold: {fmt(cert.threshold)}\nverdict: {cert.verdict}"
    )
    _emit(args, payload, human)
    return 0


def cmd_basin(args) -> int:
    cfg = _resolve_config(args)
    gens = torus_generators(cfg)
    if not gens:
        raise CliError("configuration has a finite automorphism group")
    if args.exponents:
        try:
            exps = [int(e) for e in args.exponents.split(",")]
        except ValueError as exc:
            raise CliError(f"bad --exponents {args.exponents!r}") from exc
        if len(exps) != len(gens):
            raise CliError(f"--exponents needs {len(gens)} entries, got {len(exps)}")
    else:
        exps = [1] * len(gens)
    weights = [0] * cfg.num_coordinates
    for e, gen in zip(exps, gens):
        for i, w in enumerate(gen.weights):
            weights[i] += e * w
    rho = OneParamSubgroup(tuple(weights))
    report = basin_membership(cfg, rho)
    payload = {
        "family": cfg.family,
        "params": dict(cfg.params),
        "exponents": exps,
        "classifications": [
            {"intersection": i, "kind": k, "status": s}
            for i, k, s in report.classifications
        ],
        "generic_member": report.generic.to_dict(),
        "partial_smoothings": len(report.partial_smoothings),
    }
    rows = [(i, k, s) for i, k, s in report.classifications]
    human = (
        _table(rows, ("singularity", "kind", "status"))
        + "\ngeneric member: "
        + report.generic.to_json()
    )
    _emit(args, payload, human)
    return 0


def cmd_closed_orbit(args) -> int:
    g = _read_graph(args.infile)
    if args.mode == "c":
        rep = c_closed_orbit_rep(g)
        closed = is_c_closed_orbit(rep)
    elif args.mode == "h":
        rep = h_closed_orbit_rep(g)
        closed = is_h_closed_orbit(rep)
    else:
        raise CliError("--mode must be c or h")
    payload = {
        "mode": args.mode,
        "input_genus": arithmetic_genus(g),
        "representative": rep.to_dict(),
        "closed_orbit": closed,
    }
    _emit(args, payload, rep.to_json())
    return 0


def cmd_replacements(args) -> int:
    g = _read_graph(args.infile)
    reps = enumerate_c_replacements(g)
    payload = {
        "count": len(reps),
        "configurations": [r.to_dict() for r in reps],
    }
    human = f"{len(reps)} generic configurations\n" + "\n".join(
        r.to_json() for r in reps
    )
    _emit(args, payload, human)
    return 0


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad rational {text!r}") from exc


def cmd_divisor(args) -> int:
    if args.what == "lambda-n":
        if args.n is None or args.g is None:
            raise CliError("divisor lambda-n needs --n and --g")
        cls = lambda_n(args.n, args.g)
        payload = {"lambda": fmt(cls.lam), "delta": fmt(cls.delta_total)}
        human = f"{fmt(cls.lam)}*lambda {fmt(cls.delta_total)}*delta"
    elif args.what == "viehweg":
        if args.n is None or args.m is None or args.g is None:
            raise CliError("divisor viehweg needs --n, --m and --g")
        cls = viehweg_class(args.n, int(args.m), args.g)
        payload = {"lambda": fmt(cls.lam), "delta": fmt(cls.delta_total)}
        human = f"{fmt(cls.lam)}*lambda {fmt(cls.delta_total)}*delta"
    elif args.what == "epsilon":
        if args.m is None:
            raise CliError("divisor epsilon needs --m")
        val = epsilon_of_m(int(args.m))
        payload = {"epsilon": fmt(val)}
        human = fmt(val)
    elif args.what == "k-alpha":
        if args.alpha is None or args.g is None:
            raise CliError("divisor k-alpha needs --alpha and --g")
        cls = canonical_alpha_class(_parse_rational(args.alpha), args.g)
        payload = {"lambda": fmt(cls.lam), "delta": fmt(cls.delta_total)}
        human = f"{fmt(cls.lam)}*lambda {fmt(cls.delta_total)}*delta"
    elif args.what == "moriwaki":
        if args.g is None:
            raise CliError("divisor moriwaki needs --g")
        cs = moriwaki_decomposition(args.g)
        payload = {"coefficients": [fmt(c) for c in cs], "all_positive": all(c > 0 for c in cs)}
        human = " ".join(fmt(c) for c in cs)
    else:
        raise CliError(f"unknown divisor computation {args.what!r}")
    _emit(args, payload, human)
    return 0


def cmd_paper_check(args) -> int:
    manifest = run_paper_check(only=args.only)
    if args.only and not manifest["items"]:
        print(f"error: no checks match prefix {args.only!r}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        sys.stdout.write(manifest_json(manifest))
    else:
        for item in manifest["items"]:
            status = "pass" if item["pass"] else "FAIL"
            print(f"[{status}] {item['id']}: {item['description']}")
            if not item["pass"]:
                print(f"       expected: {item['expected']}")
                print(f"       actual:   {item['actual']}")
        print(
            f"{manifest['checks'] - manifest['failures']}/{manifest['checks']} checks passed"
        )
    return 0 if manifest["passed"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gitcurves",
        description="exact GIT stability computations for bicanonical curves",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("classify", help="stability flags of a curve graph")
    sp.add_argument("--in", dest="infile", required=True, metavar="FILE")
    add_json(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("family", help="build one of the rosary configurations")
    sp.add_argument("family", choices=["open-rosary", "closed-rosary", "broken-bead"])
    sp.add_argument("--g", type=int)
    sp.add_argument("--r", type=int)
    add_json(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("index", help="Hilbert-Mumford indices of a configuration")
    sp.add_argument("--family", choices=["open-rosary", "closed-rosary", "broken-bead"])
    sp.add_argument("--in", dest="infile", metavar="FILE")
    sp.add_argument("--g", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--m", default="2,3", help="comma-separated degrees")
    sp.add_argument("--weights", help="comma-separated integer weight vector")
    sp.add_argument("--monomials", action="store_true", help="list initial/standard monomials")
    add_json(sp)
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("chow-certify", help="Chow instability certificates")
    sp.add_argument("--case", choices=list(CASES), required=True)
    sp.add_argument("--g", type=int)
    add_json(sp)
    sp.set_defaults(func=cmd_chow_certify)

    sp = sub.add_parser("basin", help="basin-of-attraction analysis of a configuration")
    sp.add_argument("--family", choices=["open-rosary", "closed-rosary", "broken-bead"])
    sp.add_argument("--in", dest="infile", metavar="FILE")
    sp.add_argument("--g", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--exponents", help="comma-separated exponents, one per torus generator")
    add_json(sp)
    sp.set_defaults(func=cmd_basin)

    sp = sub.add_parser("closed-orbit", help="closed-orbit representative of a curve")
    sp.add_argument("--mode", choices=["c", "h"], required=True)
    sp.add_argument("--in", dest="infile", required=True, metavar="FILE")
    add_json(sp)
    sp.set_defaults(func=cmd_closed_orbit)

    sp = sub.add_parser("replacements", help="generic c-semistable replacements")
    sp.add_argument("--in", dest="infile", required=True, metavar="FILE")
    add_json(sp)
    sp.set_defaults(func=cmd_replacements)

    sp = sub.add_parser("divisor", help="divisor-class computations")
    sp.add_argument(
        "what", choices=["lambda-n", "viehweg", "epsilon", "k-alpha", "moriwaki"]
    )
    sp.add_argument("--n", type=int)
    sp.add_argument("--m")
    sp.add_argument("--g", type=int)
    sp.add_argument("--alpha")
    add_json(sp)
    sp.set_defaults(func=cmd_divisor)

    sp = sub.add_parser("paper-check", help="run the pinned golden suite")
    sp.add_argument("--only", help="restrict to check ids with this prefix")
    add_json(sp)
    sp.set_defaults(func=cmd_paper_check)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        CurveGraphError,
        FamilyError,
        EngineError,
        BasinError,
        ChowError,
        DivisorError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
