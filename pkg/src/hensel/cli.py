"""Command-line front end: every verification as a reproducible report.

Reports are emitted as JSON on stdout (machine-readable, stable key order);
when stderr is a terminal a short human-readable table is printed there as
well.  ``--format csv`` and ``--format table`` replace the stdout payload.

Exit status: 0 when every verdict passes (or is not applicable), 1 on a
mathematical verdict failure, 2 on usage or precision errors.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from . import arith, orbital, qseries, traceformula
from .padics import PrecisionError
from .primes import is_prime, primes_upto, smallest_nonresidue

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass
class RunReport:
    subcommand: str
    params: dict
    results: dict
    verdict: str
    elapsed_seconds: float = 0.0
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def payload(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "subcommand": self.subcommand,
            "params": self.params,
            "results": self.results,
            "verdict": self.verdict,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _jsonable(value):
    """Make values JSON-safe and deterministic (inf -> "inf", exact types
    -> strings, tuples -> lists)."""
    if value is math.inf:
        return "inf"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, arith.UnityRoot):
        return f"e(2*pi*i*{value.exponent}/{value.order})"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _emit(report: RunReport, fmt: str, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    payload = _jsonable(report.payload())
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    elif fmt == "csv":
        print(_to_csv(payload), file=out, end="")
    elif fmt == "table":
        print(_to_table(payload), file=out)
    if fmt == "json" and hasattr(err, "isatty") and err.isatty():
        print(_to_table(payload), file=err)


def _flat(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flat(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list) and not any(
        isinstance(v, (dict, list)) for v in value
    ):
        rows.append((prefix, ";".join(str(v) for v in value)))
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flat(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, value))


def _to_csv(payload: dict) -> str:
    results = payload.get("results", {})
    lines = []
    if isinstance(results.get("rows"), list) and results["rows"]:
        cols = sorted(results["rows"][0])
        lines.append(",".join(cols))
        for row in results["rows"]:
            lines.append(",".join(str(row.get(c, "")) for c in cols))
    else:
        lines.append("key,value")
        rows = []
        _flat("", payload, rows)
        for k, v in rows:
            lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"


def _to_table(payload: dict) -> str:
    head = (
        f"{payload['subcommand']}  "
        f"[verdict: {payload['verdict']}]  "
        f"({payload['elapsed_seconds']:.3f}s)"
    )
    rows = []
    _flat("", {"params": payload["params"], "results": payload["results"]}, rows)
    width = max((len(k) for k, _ in rows), default=0)
    body = "\n".join(f"  {k.ljust(width)}  {v}" for k, v in rows)
    return head + "\n" + body


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _resolve_delta(p: int, delta: str) -> Fraction:
    if delta == "auto":
        return Fraction(smallest_nonresidue(p))
    return _parse_fraction(delta)


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [int(t) for t in text.replace(",", " ").split()]


# -- subcommand implementations ------------------------------------------------


def cmd_fl_verify(args) -> RunReport:
    if args.p == 2 or not is_prime(args.p):
        raise UsageError(f"p must be an odd prime, got {args.p}")
    delta = _resolve_delta(args.p, args.delta)
    window = None if args.window == "auto" else int(args.window)
    report = orbital.verify_fundamental_lemma(
        args.p,
        args.a,
        args.b,
        delta,
        kappa=args.kappa,
        window=window,
        saturate=not args.no_saturate,
    )
    results = {
        "regime": report.regime,
        "window": report.window,
        "counts_by_grading": report.counts,
        "untwisted_total": report.untwisted,
        "twisted_total": report.twisted,
        "closed_form": report.closed_form,
        "expected": report.expected,
        "saturated": report.saturated,
        "scan_method": report.method,
        "val_a": report.val_a,
        "val_b": report.val_b,
    }
    if report.verdict is None:
        verdict = NOT_APPLICABLE
    else:
        verdict = PASS if report.verdict else FAIL
    params = {
        "p": args.p,
        "a": str(Fraction(args.a)),
        "b": str(Fraction(args.b)),
        "delta": str(delta),
        "kappa": args.kappa,
        "window": args.window,
        "saturate": not args.no_saturate,
    }
    return RunReport("fl-verify", params, results, verdict)


def _sweep_cell(cell):
    p, vb, kappa = cell
    if vb <= 0:
        return {
            "p": p,
            "val_b": vb,
            "kappa": kappa,
            "status": NOT_APPLICABLE,
        }
    delta = smallest_nonresidue(p)
    report = orbital.verify_fundamental_lemma(p, 1, p**vb, delta, kappa=kappa)
    closed = orbital.closed_form_count(p, vb, kappa)
    ok = report.twisted == closed and report.saturated
    if kappa == 1:
        ok = ok and report.twisted == (-p) ** vb
    return {
        "p": p,
        "val_b": vb,
        "kappa": kappa,
        "delta": delta,
        "brute_force": report.twisted,
        "closed_form": closed,
        "untwisted": report.untwisted,
        "saturated": report.saturated,
        "scan_method": report.method,
        "status": PASS if ok else FAIL,
    }


def cmd_sweep(args) -> RunReport:
    config = {}
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh).get("sweep", {})
    p_list = args.p_list if args.p_list is not None else config.get("p", [])
    vb_list = args.vb_list if args.vb_list is not None else config.get("vb", [])
    kappa = args.kappa if args.kappa is not None else config.get("kappa", 1)
    for p in p_list:
        if p == 2 or not is_prime(p):
            raise UsageError(f"p must be an odd prime, got {p}")
    cells = [(p, vb, kappa) for p in p_list for vb in vb_list]
    if args.jobs > 1 and len(cells) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(cell) for cell in cells]
    failed = [r for r in rows if r["status"] == FAIL]
    results = {"rows": rows, "cells": len(rows), "failures": len(failed)}
    params = {"p_list": p_list, "vb_list": vb_list, "kappa": kappa, "jobs": args.jobs}
    return RunReport("sweep", params, results, FAIL if failed else PASS)


def cmd_orbital(args) -> RunReport:
    if args.p == 2 or not is_prime(args.p):
        raise UsageError(f"p must be an odd prime, got {args.p}")
    delta = _resolve_delta(args.p, args.delta)
    report = orbital.verify_fundamental_lemma(
        args.p,
        args.a,
        args.b,
        delta,
        kappa=args.kappa,
        window=None if args.window == "auto" else int(args.window),
        saturate=not args.no_saturate,
    )
    results = {
        "window": report.window,
        "counts_by_grading": report.counts,
        "untwisted_total": report.untwisted,
        "twisted_total": report.twisted,
        "saturated": report.saturated,
        "scan_method": report.method,
        "regime": report.regime,
    }
    verdict = PASS if report.saturated is not False else FAIL
    params = {
        "p": args.p,
        "a": str(Fraction(args.a)),
        "b": str(Fraction(args.b)),
        "delta": str(delta),
        "kappa": args.kappa,
        "window": args.window,
    }
    return RunReport("orbital", params, results, verdict)


def cmd_hecke(args) -> RunReport:
    if not is_prime(args.p):
        raise UsageError(f"p must be prime, got {args.p}")
    f = qseries.delta(args.p * args.truncation)
    ok, eigenvalue = qseries.eigencheck(f, args.p, depth=args.truncation)
    results = {
        "eigenvalue": eigenvalue,
        "is_eigenform": ok,
        "depth": args.truncation,
        "input_truncation": f.truncation,
    }
    params = {"p": args.p, "truncation": args.truncation}
    return RunReport("hecke", params, results, PASS if ok else FAIL)


def cmd_theta(args) -> RunReport:
    if args.t <= 0:
        raise UsageError("t must be positive")
    residual = qseries.theta_functional_equation_residual(args.t, args.truncation)
    ok = residual < args.tol
    results = {"residual": residual, "tolerance": args.tol, "terms": args.truncation}
    params = {"t": args.t, "truncation": args.truncation, "tol": args.tol}
    return RunReport("theta", params, results, PASS if ok else FAIL)


def _resolve_character(spec: str) -> arith.DirichletCharacter:
    if spec == "trivial":
        return arith.DirichletCharacter.trivial()
    if spec == "mod4":
        return arith.DirichletCharacter.mod_four()
    if spec == "mod8":
        return arith.DirichletCharacter.mod_eight()
    if spec.startswith("legendre:"):
        return arith.DirichletCharacter.legendre(int(spec.split(":", 1)[1]))
    raise UsageError(
        f"unknown character {spec!r} (use trivial, mod4, mod8 or legendre:<q>)"
    )


def cmd_lseries(args) -> RunReport:
    chi = _resolve_character(args.character)
    if args.s <= 1:
        raise UsageError("s must be greater than 1")
    partial_sum = arith.dirichlet_sum_partial(chi, args.s, args.nmax)
    partial_product = arith.euler_product_partial(chi, args.s, args.pmax)
    gap = abs(partial_sum - partial_product)
    ok = gap < args.tol
    results = {
        "partial_sum": partial_sum,
        "partial_product": partial_product,
        "gap": gap,
        "tolerance": args.tol,
    }
    params = {
        "character": args.character,
        "s": args.s,
        "nmax": args.nmax,
        "pmax": args.pmax,
        "tol": args.tol,
    }
    return RunReport("lseries", params, results, PASS if ok else FAIL)


def _default_character_for(d: int) -> str | None:
    if d == -1:
        return "mod4"
    if d == 2:
        return "mod8"
    if d > 2 and d % 4 == 1 and is_prime(d):
        return f"legendre:{d}"
    return None


def cmd_frobenius(args) -> RunReport:
    spec = args.character or _default_character_for(args.d)
    if spec is None:
        raise UsageError(
            f"no built-in character for d={args.d}; pass --character explicitly"
        )
    chi = _resolve_character(spec)
    mismatches = arith.reciprocity_check(args.d, chi, args.pmax)
    tallies = {"split": 0, "inert": 0, "ramified": 0}
    for p in primes_upto(args.pmax):
        tallies[arith.frobenius_quadratic(args.d, p).value] += 1
    results = {
        "character": spec,
        "mismatches": [list(m) for m in mismatches],
        "mismatch_count": len(mismatches),
        "tallies": tallies,
    }
    params = {"d": args.d, "pmax": args.pmax, "character": spec}
    return RunReport("frobenius", params, results, FAIL if mismatches else PASS)


def _resolve_group(spec: str, degree: int | None) -> traceformula.FiniteGroupTable:
    families = {
        "C": traceformula.FiniteGroupTable.cyclic,
        "S": traceformula.FiniteGroupTable.symmetric,
        "A": traceformula.FiniteGroupTable.alternating,
        "D": traceformula.FiniteGroupTable.dihedral,
    }
    if spec[:1].upper() in families and spec[1:].isdigit():
        return families[spec[:1].upper()](int(spec[1:]))
    if degree is None:
        raise UsageError("generator-style --group needs --degree")
    gens = [
        traceformula.parse_cycles(chunk, degree)
        for chunk in spec.split(";")
        if chunk.strip()
    ]
    return traceformula.FiniteGroupTable.from_generators(degree, gens, name=spec)


def cmd_trace(args) -> RunReport:
    rows = []
    if args.group == "catalog":
        pairs = []
        for name, group in traceformula.catalog():
            for sub in group.all_subgroups():
                pairs.append((group, sub))
    else:
        group = _resolve_group(args.group, args.degree)
        if args.subgroup is not None:
            gens = [
                traceformula.parse_cycles(chunk, group.degree)
                for chunk in args.subgroup.split(";")
                if chunk.strip()
            ]
            pairs = [(group, group.subgroup_closure(gens))]
        else:
            pairs = [(group, sub) for sub in group.all_subgroups()]
    failures = 0
    for group, sub in pairs:
        ok, witness = traceformula.verify_trace_formula(group, sub)
        if not ok:
            failures += 1
        rows.append(
            {
                "group": group.name,
                "group_order": len(group),
                "subgroup_order": len(sub),
                "index": len(group) // len(sub),
                "status": PASS if ok else FAIL,
            }
        )
    results = {"rows": rows, "pairs": len(rows), "failures": failures}
    params = {
        "group": args.group,
        "subgroup": args.subgroup,
        "degree": args.degree,
    }
    return RunReport("trace", params, results, FAIL if failures else PASS)


# -- argument parsing -----------------------------------------------------------


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hensel",
        description="Exact verification suite: lattice counts, q-expansions, "
        "L-factors, reciprocity, and the finite-group trace identity.",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "table"),
        default="json",
        help="stdout payload format (default json)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("HENSEL_JOBS", "1")),
        help="worker processes for sweeps (default $HENSEL_JOBS or 1)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    fl = sub.add_parser("fl-verify", help="twisted count against the transfer constant")
    fl.add_argument("--p", type=int, required=True)
    fl.add_argument("--a", type=_parse_fraction, required=True)
    fl.add_argument("--b", type=_parse_fraction, required=True)
    fl.add_argument("--delta", default="auto", help="non-square unit (default auto)")
    fl.add_argument("--kappa", type=int, choices=(0, 1), default=1)
    fl.add_argument("--window", default="auto", help="window radius (default auto)")
    fl.add_argument("--no-saturate", action="store_true")
    fl.set_defaults(func=cmd_fl_verify)

    sw = sub.add_parser("sweep", help="closed form vs brute force over a grid")
    sw.add_argument("--p-list", type=_int_list, default=None)
    sw.add_argument("--vb-list", type=_int_list, default=None)
    sw.add_argument("--kappa", type=int, choices=(0, 1), default=None)
    sw.add_argument("--config", help="JSON file with a 'sweep' grid section")
    sw.set_defaults(func=cmd_sweep)

    orb = sub.add_parser("orbital", help="stable-class counts for one element")
    orb.add_argument("--p", type=int, required=True)
    orb.add_argument("--a", type=_parse_fraction, required=True)
    orb.add_argument("--b", type=_parse_fraction, required=True)
    orb.add_argument("--delta", default="auto")
    orb.add_argument("--kappa", type=int, choices=(0, 1), default=0)
    orb.add_argument("--window", default="auto")
    orb.add_argument("--no-saturate", action="store_true")
    orb.set_defaults(func=cmd_orbital)

    hk = sub.add_parser("hecke", help="eigenform check for the weight-12 cusp form")
    hk.add_argument("--p", type=int, required=True)
    hk.add_argument("--truncation", type=int, default=64)
    hk.set_defaults(func=cmd_hecke)

    th = sub.add_parser("theta", help="theta functional-equation residual")
    th.add_argument("--t", type=float, required=True)
    th.add_argument("--truncation", type=int, default=50)
    th.add_argument("--tol", type=float, default=1e-10)
    th.set_defaults(func=cmd_theta)

    ls = sub.add_parser("lseries", help="partial sum vs partial product")
    ls.add_argument("--character", default="trivial")
    ls.add_argument("--s", type=float, default=2.0)
    ls.add_argument("--nmax", type=int, default=100000)
    ls.add_argument("--pmax", type=int, default=10000)
    ls.add_argument("--tol", type=float, default=1e-4)
    ls.set_defaults(func=cmd_lseries)

    fr = sub.add_parser("frobenius", help="splitting behavior vs a character")
    fr.add_argument("--d", type=int, required=True)
    fr.add_argument("--pmax", type=int, default=1000)
    fr.add_argument("--character", default=None)
    fr.set_defaults(func=cmd_frobenius)

    tr = sub.add_parser("trace", help="finite-group trace identity")
    tr.add_argument("--group", default="catalog")
    tr.add_argument("--subgroup", default=None, help="semicolon-separated cycles")
    tr.add_argument("--degree", type=int, default=None)
    tr.set_defaults(func=cmd_trace)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (UsageError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"hensel: error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"hensel: precision error: {exc}", file=sys.stderr)
        return 2
    report.elapsed_seconds = round(time.perf_counter() - start, 6)
    _emit(report, args.format)
    if report.verdict == FAIL:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
