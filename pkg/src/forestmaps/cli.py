"""Command-line front end.

Every pipeline is reachable as a subcommand with machine-readable output:

  coeffs       exact series tables (F, F', R, S, S~, G, H)
  oracle       exhaustive map enumeration and comparison against the solver
  verify       identity / differential-equation residual checks
  radius       radii, critical points, inner S~ radius
  asymptotics  coefficient-ratio tables, the logarithmic probe, the cubic
               expansion fit
  random       Boltzmann-model constants and finite-n expectations
  mu-expand    (u+1)-positivity tables
  repro        the full acceptance suite

Exact values are serialized as rational strings, never floats; numeric
outputs carry residual or tail-bound fields.  Identical invocations produce
byte-identical output (the header carries only the package version).  Exit
codes: 2 flag errors, 3 scale-guard refusals, 4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from . import __version__
from .exact import Q, rat_from_str, rat_to_str
from .hyp import Precision
from .maps import ScaleGuardError, enumerate_maps, oracle_f
from .series import ZSeries

EXIT_BAD_FLAGS = 2
EXIT_SCALE_GUARD = 3
EXIT_NUMERIC = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_u(text: str):
    """'symbolic' -> None, otherwise an exact rational from 'p/q'."""
    if text == "symbolic":
        return None
    try:
        return rat_from_str(text)
    except (ValueError, ZeroDivisionError):
        raise CliError("cannot parse u=%r (use 'symbolic' or 'p/q')" % text,
                       EXIT_BAD_FLAGS)


def _precision(args) -> Precision:
    digits = args.digits
    if digits is None:
        digits = int(os.environ.get("FORESTMAPS_DIGITS", "50"))
    return Precision(digits, 10.0 ** (-(digits // 2 - 2)))


def _emit(args, payload: dict, csv_rows=None, csv_header=None):
    if args.format == "csv":
        if csv_rows is None:
            raise CliError("this subcommand has no CSV form; use --format json",
                           EXIT_BAD_FLAGS)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        doc = {
            "tool": "forestmaps",
            "version": __version__,
            "command": args.command,
            "config": {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "output") and v is not None},
            "result": payload,
        }
        text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_coeffs(args):
    from .solver import MAX_SYMBOLIC_ORDER, solve

    u = _parse_u(args.u)
    if u is None and args.order > MAX_SYMBOLIC_ORDER:
        raise CliError(
            "symbolic u is limited to order %d (cost grows quartically); "
            "pass --u with a rational for longer series" % MAX_SYMBOLIC_ORDER,
            EXIT_BAD_FLAGS,
        )
    wanted = [s.strip() for s in args.series.split(",")]
    out = solve(args.p, args.order, u)
    table = {
        "F": out.F, "Fprime": out.Fprime, "R": out.R, "S": out.S,
        "Stilde": out.S_tilde, "H": out.H,
    }
    if out.G is not None:
        table["G"] = out.G
    payload = {"p": args.p, "order": args.order, "series": {}}
    for name in wanted:
        if name not in table:
            raise CliError("unknown series %r (choose from %s)"
                           % (name, ",".join(sorted(table))), EXIT_BAD_FLAGS)
        payload["series"][name] = table[name].to_json()
    _emit(args, payload)


def cmd_oracle(args):
    poly = oracle_f(args.p, args.faces, args.variant)
    payload = {
        "p": args.p,
        "n_faces": args.faces,
        "variant": args.variant,
        "polynomial_in_u": poly.to_strs(),
    }
    if args.compare:
        from .solver import series_f, series_h

        if args.variant == "root_edge_outside":
            ref = series_h(args.p, max(args.faces, 3)).coeff(args.faces)
        else:
            ref = series_f(args.p, max(args.faces, 3))[0].coeff(args.faces)
        payload["solver_coefficient"] = ref.to_strs()
        payload["matches_solver"] = bool(poly == ref)
    if args.dump_maps:
        payload["maps"] = [m.to_json() for m in enumerate_maps(args.p, args.faces)]
    _emit(args, payload)


def cmd_verify(args):
    from .deverify import DE_NAMES, IDENTITY_NAMES, check_de, check_identity

    u = _parse_u(args.u)
    only = set(args.only.split(",")) if args.only else None
    rows = []
    for name in IDENTITY_NAMES:
        if only and name not in only:
            continue
        rep = check_identity(name, args.order)
        rows.append(rep)
    for name in DE_NAMES:
        if only and name not in only:
            continue
        rep = check_de(name, args.de_order, u)
        rows.append(rep)
    if only and not rows:
        raise CliError("no identity or equation matches %r" % args.only,
                       EXIT_BAD_FLAGS)
    payload = {
        "all_zero": all(r.is_zero for r in rows),
        "checks": [
            {"name": r.identity_name, "tested_order": r.tested_order,
             "valid_order": r.valid_order, "zero_residual": r.is_zero,
             "detail": r.detail}
            for r in rows
        ],
    }
    _emit(args, payload,
          csv_rows=[(r.identity_name, r.valid_order, r.is_zero) for r in rows],
          csv_header=("name", "valid_order", "zero_residual"))
    if not payload["all_zero"]:
        sys.exit(1)


def cmd_radius(args):
    from .critical import radius, s_tilde_radius_cubic

    prec = _precision(args)
    us = [float(x) for x in args.u.split(",")]
    profiles = []
    for u in us:
        prof = radius(args.p, u, prec)
        rec = {
            "u": prof.u, "rho": prof.rho, "tau": prof.tau, "sigma": prof.sigma,
            "regime": prof.regime, "subexp_class": prof.subexp_class,
            "c_u": prof.c_u, "residuals": prof.residuals,
        }
        if args.s_tilde:
            if args.p != 3 or u <= 0:
                raise CliError("--s-tilde applies to p=3 with u > 0", EXIT_BAD_FLAGS)
            rec["s_tilde_radius"] = s_tilde_radius_cubic(u, prec)
        profiles.append(rec)
    _emit(args, {"profiles": profiles},
          csv_rows=[(r["u"], r["rho"], r["tau"], r["sigma"], r["c_u"])
                    for r in profiles],
          csv_header=("u", "rho", "tau", "sigma", "c_u"))


def cmd_asymptotics(args):
    from .asymptotics import (coefficient_asymptotic_check, cubic_beta_fit,
                              log_singularity_probe)

    prec = _precision(args)
    if args.mode == "ratios":
        ns = [int(x) for x in args.n_list.split(",")]
        rows = coefficient_asymptotic_check(args.p, Q(rat_from_str(args.u)), ns, prec)
        payload = {"rows": [{"n": r["n"], "ratio": r["ratio"]} for r in rows]}
        _emit(args, payload,
              csv_rows=[(r["n"], rat_to_str(r["f_n"]), r["ratio"]) for r in rows],
              csv_header=("n", "f_n", "ratio"))
        return
    fracs = tuple(float(x) for x in args.fracs.split(","))
    if args.mode == "log-probe":
        res = log_singularity_probe(rat_from_str(args.u), fracs, prec,
                                    order=args.order, tol=args.tol)
        _emit(args, res,
              csv_rows=[(r["z_frac"], r["lhs"], r["rhs"], r["deviation"],
                         r["tail_bound"]) for r in res["rows"]],
              csv_header=("z_over_rho", "lhs", "rhs", "deviation", "tail_bound"))
        return
    if args.mode == "beta-fit":
        res = cubic_beta_fit(rat_from_str(args.u), fracs, args.order or 4000, prec)
        _emit(args, res,
              csv_rows=[(r["z_frac"], r["fprime"], r["beta_pointwise"])
                        for r in res["beta_rows"]],
              csv_header=("z_over_rho", "fprime", "beta_pointwise"))
        return
    raise CliError("unknown asymptotics mode %r" % args.mode, EXIT_BAD_FLAGS)


def cmd_random(args):
    from .randmodel import (component_slope, finite_n_expectations,
                            finite_n_root_size, kappa, s_limit_law)

    prec = _precision(args)
    u = rat_from_str(args.u)
    payload = {"u": rat_to_str(u), "kappa": kappa(float(u), prec)}
    if u > 0:
        payload["component_slope"] = component_slope(float(u), prec)
        law = s_limit_law(float(u), args.k_max, prec)
        payload["size_law_limit"] = law
        ns = [int(x) for x in args.n_list.split(",")] if args.n_list else []
        if ns:
            payload["finite_n"] = [
                {"n": r["n"], "E_active_over_n": r["E_active_over_n"],
                 "E_components": rat_to_str(r["E_components"])}
                for r in finite_n_expectations(u, ns)
            ]
            fin = finite_n_root_size(u, max(ns), args.k_max)
            payload["size_law_finite_n"] = {"n": max(ns), "values": fin}
            rows = [(k + 1, law[k], fin[k]) for k in range(args.k_max)]
        else:
            rows = [(k + 1, law[k], "") for k in range(args.k_max)]
        _emit(args, payload, csv_rows=rows,
              csv_header=("k", "limit_prob", "finite_n_prob"))
    else:
        _emit(args, payload, csv_rows=[(args.u, "", payload["kappa"])],
              csv_header=("u", "slope", "kappa"))


def cmd_mu_expand(args):
    from .solver import solve
    from .series import ZSeries
    from .upoly import UPoly

    out = solve(args.p, args.order)
    z = ZSeries.z(args.order, UPoly(), UPoly((1,)))
    table = {
        "R-z": (out.R - z).divide_by_u(),
        "S": out.S.divide_by_u(),
        "Stilde": out.S_tilde.divide_by_u() if args.p % 2 else out.S_tilde,
        "F": out.F,
    }
    if args.series not in table:
        raise CliError("unknown series %r for mu expansion" % args.series,
                       EXIT_BAD_FLAGS)
    mu = table[args.series].to_mu()
    rows = []
    all_nonneg = True
    for n, c in enumerate(mu.coeffs):
        rows.append({"z_power": n, "mu_coeffs": c.to_strs()})
        all_nonneg &= c.nonneg()
    _emit(args, {"series": args.series, "divided_by_u": args.series != "F",
                 "all_nonnegative": all_nonneg, "rows": rows})


def cmd_repro(args):
    from .acceptance import CRITERIA, run_all

    if args.criteria:
        wanted = {int(x) for x in args.criteria.split(",")}
        results = [fn() for fn in CRITERIA if int(fn.__name__.split("_")[1]) in wanted]
        for r in results:
            print("criterion %2d  %-38s %s  (%5.1fs)  %s"
                  % (r.number, r.title, "PASS" if r.passed else "FAIL",
                     r.seconds, r.detail))
    else:
        results = run_all(verbose=True)
    passed = sum(1 for r in results if r.passed)
    print("%d/%d criteria passed" % (passed, len(results)))
    if passed != len(results):
        sys.exit(1)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="forestmaps",
        description="exact series, oracles and singularity numerics for "
                    "regular planar maps carrying spanning forests",
    )
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--output", help="write to a file instead of stdout")
    ap.add_argument("--digits", type=int, default=None,
                    help="working precision in digits (default: "
                         "FORESTMAPS_DIGITS or 50)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="exact series tables")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--u", default="symbolic")
    p.add_argument("--series", default="F")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("oracle", help="exhaustive enumeration of small maps")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--faces", type=int, required=True)
    p.add_argument("--variant", default="all_forests",
                   choices=("all_forests", "tree_rooted_activity",
                            "root_edge_outside"))
    p.add_argument("--compare", action="store_true",
                   help="also compute the solver coefficient and compare")
    p.add_argument("--dump-maps", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="identity and DE residual checks")
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--de-order", type=int, default=12)
    p.add_argument("--u", default="symbolic")
    p.add_argument("--only", help="comma-separated check names")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("radius", help="radii and critical data")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--u", required=True, help="value or comma-separated grid")
    p.add_argument("--s-tilde", action="store_true",
                   help="include the inner S~ radius workflow (p=3, u>0)")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("asymptotics", help="ratio tables and singular probes")
    p.add_argument("--mode", required=True,
                   choices=("ratios", "log-probe", "beta-fit"))
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--u", required=True)
    p.add_argument("--n-list", default="50,100,200,400")
    p.add_argument("--fracs", default="0.9,0.99,0.999")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--order", type=int, default=None,
                   help="series truncation (log-probe default: sized from --tol)")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("random", help="Boltzmann-model statistics")
    p.add_argument("--u", required=True)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--n-list", default="100,200")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("mu-expand", help="(u+1)-positivity tables")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--series", default="R-z",
                   help="one of R-z, S, Stilde, F (the first three are "
                        "divided by u before expanding)")
    p.set_defaults(func=cmd_mu_expand)

    p = sub.add_parser("repro", help="run the acceptance suite")
    p.add_argument("--criteria", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_repro)

    return ap


def main(argv: Optional[list] = None) -> None:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        sys.exit(exc.code)
    except ScaleGuardError as exc:
        print("refused: %s" % exc, file=sys.stderr)
        sys.exit(EXIT_SCALE_GUARD)
    except (ValueError, ZeroDivisionError) as exc:
        print("numeric failure: %s" % exc, file=sys.stderr)
        sys.exit(EXIT_NUMERIC)


if __name__ == "__main__":
    main()
