"""Command-line front end.

Exit codes: 0 success, 1 an asserted verification failed, 2 bad arguments,
3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from typing import List, Optional

from . import arrangement as arr
from .coinvariant import (
    artin_hilbert,
    beta_phi,
    insert_bijection,
    inverse_bijection,
    iter_super_artin,
    staircase,
    super_artin_hilbert,
)
from .colored import (
    cycle_decomposition,
    enumerate_full,
    enumerate_ordered,
    enumerate_partitions,
    enumerate_super,
    inv,
    underlying_partition,
)
from .lattice import LatticeTooLarge, build_lattice, element_cap, whitney_numbers
from .qpoly import q_mstep_factorial
from .stirling import FAMILIES, StirlingTable, ordered_q_stirling, stirling2, super_q_stirling
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_range(text: str) -> List[int]:
    """``"3"``, ``"1..4"`` or ``"0,2,5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo_i, hi_i + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def _single(text: str, name: str) -> int:
    vals = parse_range(text)
    if len(vals) != 1:
        raise UsageError(f"--{name} takes a single value here")
    return vals[0]


def _nonneg(vals, name, low=0):
    if any(v < low for v in vals):
        raise UsageError(f"--{name} values must be >= {low}")
    return vals


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ------------------------------------------------------------------ tables


def _family(args) -> str:
    fam = args.family
    if args.barred and fam == "second":
        fam = "second-barred"
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    return fam


def cmd_table(args, poly: bool) -> int:
    fam = _family(args)
    ms = _nonneg(parse_range(args.m), "m", 1)
    ns = _nonneg(parse_range(args.n), "n")
    if poly and args.format == "csv":
        raise UsageError("csv output is only available for integer tables")
    rows = []
    for m in ms:
        table = StirlingTable(m, fam)
        for n in ns:
            for k in range(n + 1):
                cell = table[n, k]
                rows.append((m, n, k, cell if poly else cell(1)))
    if args.format == "json":
        data = {
            "family": fam,
            "cells": [
                {"m": m, "n": n, "k": k, "value": v.to_json() if poly else str(v)} for m, n, k, v in rows
            ],
        }
        _emit(_dump(data), args)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "k", "value"])
        for r in rows:
            w.writerow(r)
        _emit(buf.getvalue(), args)
    else:
        lines = [f"# {fam}"]
        for m, n, k, v in rows:
            lines.append(f"m={m} n={n} k={k}  {v}")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


# ------------------------------------------------------------- enumerate


def _expected_count(kind, m, n, k, p, barred) -> int:
    if kind == "plain":
        return stirling2(m, n, k, barred)
    if kind == "super":
        return super_q_stirling(m, n, k)(1)
    if kind in ("ordered-super", "ordered-cr"):
        return ordered_q_stirling(m, n, k, kind.split("-")[1])(1)
    size = m**n // p
    for i in range(2, n + 1):
        size *= i
    return size


def cmd_enumerate(args) -> int:
    m = _single(args.m, "m")
    n = _single(args.n, "n")
    k = _single(args.k, "k") if args.k is not None else None
    if m < 1 or n < 0:
        raise UsageError("need m >= 1 and n >= 0")
    kind = args.kind
    if kind != "full" and k is None:
        raise UsageError("--k is required for partition enumeration")
    p = args.p if args.p is not None else 1
    if kind == "full" and (m % p or p not in (1, m)):
        raise UsageError("--p must be 1 or m")
    cap = element_cap()
    expected = _expected_count(kind, m, n, k, p, args.barred)
    if expected > cap:
        raise LatticeTooLarge(f"{expected} objects exceed the cap {cap}")
    items = []
    if kind == "plain":
        for s in enumerate_partitions(m, n, k, args.barred):
            items.append((str(s), inv(s), s.to_json()))
    elif kind == "super":
        for s in enumerate_super(m, n, k):
            items.append((str(s), inv(s), s.to_json()))
    elif kind in ("ordered-super", "ordered-cr"):
        for s in enumerate_ordered(m, n, k, kind.split("-")[1]):
            items.append((str(s), inv(s), s.to_json()))
    else:
        for g in enumerate_full(m, p, n, k=k):
            dec = cycle_decomposition(g)
            sigma = underlying_partition(g, barred=False)
            items.append((f"{dec} -> {sigma}", None, {"base_map": list(g.base_map), "color_shift": list(g.color_shift), "cycles": str(dec), "partition": str(sigma)}))
    if args.format == "json":
        out = []
        for text, stat, data in items:
            d = dict(data)
            d["text"] = text
            if stat is not None:
                d["inv"] = stat
            out.append(d)
        _emit(_dump(out), args)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["object", "inv"])
        for text, stat, _ in items:
            w.writerow([text, "" if stat is None else stat])
        _emit(buf.getvalue(), args)
    else:
        lines = [text if stat is None else f"{text}\tinv={stat}" for text, stat, _ in items]
        lines.append(f"# {len(items)} objects")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


# ---------------------------------------------------------------- lattice


def cmd_lattice(args) -> int:
    m = _single(args.m, "m")
    n = _single(args.n, "n")
    if m < 1 or n < 1:
        raise UsageError("need m >= 1 and n >= 1")
    L = build_lattice(m, n, args.barred)
    w, W = whitney_numbers(L)
    data = {
        "m": m,
        "n": n,
        "barred": args.barred,
        "elements": [
            {"partition": str(s), "rank": r, "mobius": mu} for s, r, mu in zip(L.elements, L.rank, L.mobius)
        ],
        "whitney_first": w,
        "whitney_second": W,
    }
    ok = True
    if args.geometric:
        p = m if (args.barred and m > 1) else (args.p if args.p is not None else 1)
        if m % p or (args.barred and m > 1 and p != m) or (not args.barred and m > 1 and p == m):
            raise UsageError("--p must divide m, equal m exactly for barred lattices")
        ok, cert, witness = arr.iso_check(m, p, n)
        data["geometric"] = {"p": p, "isomorphic": ok, "witness": witness, "certificate": cert}
    if args.format == "json":
        _emit(_dump(data), args)
    else:
        lines = [f"# lattice m={m} n={n} {'barred' if args.barred else 'plain'}: {len(L)} elements"]
        for e in data["elements"]:
            lines.append(f"rank={e['rank']} mu={e['mobius']}\t{e['partition']}")
        lines.append(f"W = {W}")
        lines.append(f"w = {w}")
        if args.geometric:
            g = data["geometric"]
            lines.append(f"geometric p={g['p']}: {'isomorphic' if ok else 'NOT isomorphic: ' + g['witness']}")
            for part, rows in g["certificate"].items():
                lines.append(f"  {part} -> {rows}")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ artin


def cmd_artin(args) -> int:
    m = _single(args.m, "m")
    n = _single(args.n, "n")
    if m < 1 or n < 0:
        raise UsageError("need m >= 1 and n >= 0")
    if (args.super or args.show_bijection) and m < 2:
        raise UsageError("super Artin data needs m >= 2")
    data = {
        "m": m,
        "n": n,
        "staircase": list(staircase(m, n)),
        "hilbert": artin_hilbert(m, n).to_json(),
        "hilbert_equals_mstep_factorial": artin_hilbert(m, n) == q_mstep_factorial(m * n, m),
    }
    text = [
        f"staircase({m},{n}) = {staircase(m, n)}",
        f"Hilb = {artin_hilbert(m, n)}",
    ]
    if args.super:
        rows = []
        for size in range(n + 1):
            for T in itertools.combinations(range(1, n + 1), size):
                beta, phi = beta_phi(T, m, n)
                rows.append({"T": list(T), "beta": list(beta), "phi": list(phi)})
                text.append(f"T={set(T) or '{}'} beta={beta} phi={phi}")
        H = super_artin_hilbert(m, n)
        data["beta_phi"] = rows
        data["super_hilbert"] = H.to_json()
        text.append(f"super Hilb = {H}")
    if args.show_bijection:
        trace_rows = []
        for T, alpha in iter_super_artin(m, n):
            omega = insert_bijection(T, alpha, m, n)
            back = inverse_bijection(omega)
            ok = back == (T, tuple(alpha))
            trace_rows.append({"T": sorted(T), "alpha": list(alpha), "omega": str(omega), "round_trip": ok})
            text.append(f"T={sorted(T)} alpha={alpha} -> {omega}  round-trip={'ok' if ok else 'FAILED'}")
        data["bijection"] = trace_rows
    if args.format == "json":
        _emit(_dump(data), args)
    else:
        _emit("\n".join(text) + "\n", args)
    return EXIT_OK


# ----------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    ms = parse_range(args.m) if args.m else None
    ns = parse_range(args.n) if args.n else None
    if ms is not None:
        _nonneg(ms, "m", 1)
    if ns is not None:
        _nonneg(ns, "n")
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    reports = run_suite(args.suite, ms, ns)
    failed = [r for r in reports if not r.ok]
    if args.format == "json":
        _emit(_dump({"suite": args.suite, "failed": len(failed), "reports": [r.to_json() for r in reports]}), args)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "params", "status", "witness", "detail"])
        for r in reports:
            w.writerow([r.identity, r.params, r.status, r.witness, r.detail])
        _emit(buf.getvalue(), args)
    else:
        lines = [r.line() for r in reports]
        lines.append(f"# {len(reports)} checks, {len(failed)} failed")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_FAIL if failed else EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crgstir", description="Stirling numbers for complex reflection groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "csv")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", help="write to this file instead of stdout")

    for name, help_ in (("table", "integer Stirling tables"), ("qtable", "q-Stirling tables")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--family", default="second", help=", ".join(FAMILIES))
        p.add_argument("--m", required=True)
        p.add_argument("--n", required=True)
        p.add_argument("--barred", action="store_true")
        common(p)

    p = sub.add_parser("enumerate", help="list partitions or full permutations")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--k")
    p.add_argument("--kind", choices=("plain", "super", "ordered-super", "ordered-cr", "full"), default="plain")
    p.add_argument("--barred", action="store_true")
    p.add_argument("--p", type=int)
    common(p)

    p = sub.add_parser("lattice", help="Möbius values and Whitney numbers")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--barred", action="store_true")
    p.add_argument("--geometric", action="store_true", help="compare with the hyperplane intersection lattice")
    p.add_argument("--p", type=int)
    common(p, ("text", "json"))

    p = sub.add_parser("artin", help="staircases and Hilbert series")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--super", action="store_true")
    p.add_argument("--show-bijection", action="store_true")
    common(p, ("text", "json"))

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="all, " + ", ".join(SUITES))
    p.add_argument("--m")
    p.add_argument("--n")
    common(p)
    return ap


COMMANDS = {
    "table": lambda a: cmd_table(a, poly=False),
    "qtable": lambda a: cmd_table(a, poly=True),
    "enumerate": cmd_enumerate,
    "lattice": cmd_lattice,
    "artin": cmd_artin,
    "verify": cmd_verify,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"crgstir: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeTooLarge as e:
        print(f"crgstir: size cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP


def main() -> None:
    sys.exit(run())
