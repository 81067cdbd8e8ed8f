"""Named verification suites.  Every suite returns reports in a fixed order."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

from . import arrangement as arr
from .coinvariant import (
    artin_check,
    beta_phi,
    bijection_check,
    insert_bijection,
    inversion_data,
    super_artin_check,
    super_artin_enumerated,
    super_artin_hilbert,
)
from .colored import (
    ColoredPermutation,
    OrderedPartition,
    cycle_decomposition,
    enumerate_full,
    enumerate_partitions,
    inv,
    parse_ordered,
    parse_partition,
    parse_super,
)
from .involution import NotMergeable, cancellation, merge, split
from .lattice import build_lattice, full_count_check, product_formula_check, whitney_numbers
from .qpoly import IntPoly, elementary_eval
from .report import DISCREPANCY, VerificationReport, check
from .stirling import (
    alternating_sum_check,
    chan_rhoades_check,
    classical_stirling1,
    classical_stirling2,
    coexponents,
    egf_bivariate_check,
    egf_check,
    matrix_inverse_check,
    q_stirling2,
    q_stirling2_barred_recursive,
    stirling2,
    verify_falling_factorial,
    verify_t_identities,
)

Reports = List[VerificationReport]
Range = Optional[Sequence[int]]


def _pick(given: Range, default) -> list:
    return list(default) if given is None else list(given)


def inv_generating_function(m: int, n: int, k: int, barred: bool = False) -> IntPoly:
    out = IntPoly()
    for sigma in enumerate_partitions(m, n, k, barred):
        out = out + IntPoly.monomial(inv(sigma))
    return out


# ---------------------------------------------------------------- suites


def suite_enumeration(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 5)):
        for barred in (False, True) if m >= 2 else (False,):
            kind = "barred" if barred else "plain"
            first, bad = "", 0
            recursive_bad = ""
            cells = 0
            for n in _pick(ns, range(0, 6)):
                for k in range(n + 1):
                    cells += 1
                    got = inv_generating_function(m, n, k, barred)
                    want = q_stirling2(m, n, k, barred)
                    if got != want:
                        bad += 1
                        first = first or f"n={n} k={k}: enumeration {got}, formula {want}"
                    if barred and got != q_stirling2_barred_recursive(m, n, k) and not recursive_bad:
                        recursive_bad = f"n={n} k={k}"
            witness = f"{bad}/{cells} cells differ; first {first}" if bad else ""
            out.append(check(f"enumeration=closed-form({kind})", f"m={m}", not bad, witness))
            if barred:
                out.append(check("enumeration=barred-recursion", f"m={m}", not recursive_bad, recursive_bad))
    return out


def suite_worked_values(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    raw = parse_partition("0 4^0 4^1 4^2 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2", 3)
    std = "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0"
    out.append(check("standard-form", "m=3 n=4", str(raw) == std, str(raw)))
    out.append(check("inv(standard form)", "m=3 n=4", inv(raw) == 11, f"inv={inv(raw)}"))
    sup = parse_super("0 1^2 1^0 1^1 3^2 3^0 3^1 | 2^1/2^2/2^0", 3)
    out.append(check("inv(super example)", "m=3 n=3", inv(sup) == 5, f"inv={inv(sup)}"))

    omega = parse_ordered("(0 4^2 4^0 4^1 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2)", 3, "super")
    eta, T = inversion_data(omega)
    out.append(check("eta(example)", "m=3 n=4", eta == (0, 0, 4, 7), f"eta={eta}, expected (0, 0, 4, 7)"))
    out.append(check("T(example)", "m=3 n=4", T == frozenset({3, 4}), f"T={sorted(T)}"))

    trace: list = []
    final = insert_bijection({2, 3}, (1, 2, 4), 3, 3, trace)
    step2 = trace[1][2]
    out.append(check("bijection(step 2)", "m=3 n=3", step2 == "(0 | 1^2 2^0/1^0 2^1/1^1 2^2)", step2))
    printed = "(0 4^2 4^0 4^1 | 1^2 2^0/1^0 2^1/1^1 2^2)"
    out.append(
        VerificationReport(
            "bijection(final display)",
            "m=3 n=3",
            DISCREPANCY,
            discrepancies=(f"printed {printed}; algorithm gives {final}",),
        )
    )

    beta, phi = beta_phi({1, 3, 4, 6, 9}, 3, 9)
    ok = beta == (1, 2, 4, 4, 5, 7, 8, 11, 13) and phi == (1, 2, 1, 0, 1)
    out.append(check("beta/phi(figure)", "m=3 n=9", ok, f"beta={beta} phi={phi}"))

    g = ColoredPermutation(4, 1, 3, (2, 1, 3), (1, 0, 0))
    dec = str(cycle_decomposition(g))
    want = "(0)(1^0,2^1,1^1,2^2,1^2,2^3,1^3,2^0)(3^0)(3^1)(3^2)(3^3)"
    out.append(check("cycle-decomposition", "m=4 n=3", dec == want, dec))
    cnt = sum(1 for _ in enumerate_full(2, 1, 2, k=0))
    out.append(check("full-permutations", "m=2 n=2 k=0", cnt == 3, f"count={cnt}"))

    example = parse_partition("0 | 1^0 2^2/1^1 2^0/1^2 2^1 | 3^0/3^1/3^2", 3, barred=True)
    found = any(s.key() == example.key() for s in enumerate_partitions(3, 3, 2))
    out.append(check("enumerate-contains", "m=3 n=3 k=2", found, str(example)))
    q = q_stirling2(2, 2, 1)
    out.append(check("qtable-entry", "m=2 n=2 k=1", str(q) == "2+q+q^2", str(q)))

    out.extend(_map_examples())
    return out


def _map_examples() -> Reports:
    rows = [
        ("super", "split", "(0 1^2 1^0 1^1 3^1 3^2 3^0 | 2^0/2^1/2^2)", "(0 1^2 1^0 1^1 | 3^2/3^0/3^1 | 2^0/2^1/2^2)"),
        ("super", "split", "(0 1^2 1^0 1^1 | 2^0 3^1/2^1 3^2/2^2 3^0)", "(0 1^2 1^0 1^1 | 2^0/2^1/2^2 | 3^2/3^0/3^1)"),
        ("super", "split", "(0 1^2 1^0 1^1 | 2^0 3^0/2^1 3^1/2^2 3^2)", "(0 1^2 1^0 1^1 | 3^1/3^2/3^0 | 2^0/2^1/2^2)"),
        ("cr", "split", "(0 1^1 1^2 1^0 3^1 3^2 3^0 | 2^0/2^1/2^2)", "(0 1^2 1^0 1^1 | 3^0/3^1/3^2 | 2^0/2^1/2^2)"),
        ("cr", "split", "(0 1^1 1^2 1^0 | 2^0 3^1/2^1 3^2/2^2 3^0)", "(0 1^1 1^2 1^0 | 2^0/2^1/2^2 | 3^0/3^1/3^2)"),
        ("cr", "split", "(0 1^1 1^2 1^0 | 2^0 3^0/2^1 3^1/2^2 3^2)", "(0 1^1 1^2 1^0 | 3^2/3^0/3^1 | 2^0/2^1/2^2)"),
    ]
    out = []
    for flavor, _, before, after in rows:
        a = parse_ordered(before, 3, flavor)
        b = parse_ordered(after, 3, flavor)
        got_s, got_m = split(a, 3), merge(b, 3)
        ok = got_s == b and got_m == a
        out.append(check(f"split/merge({flavor})", before, ok, f"split {got_s}, merge {got_m}"))
    stuck = parse_ordered("(0 | 1^2/1^0/1^1 | 2^1/2^2/2^0 | 3^1/3^2/3^0)", 3, "cr")
    try:
        merge(stuck, 3)
        ok = False
    except NotMergeable:
        ok = True
    out.append(check("no-merge(cr)", str(stuck), ok, "merge unexpectedly succeeded"))
    return out


def suite_lattice(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    cases = arr.ISO_CASES
    if ms is not None or ns is not None:
        ms_, ns_ = _pick(ms, range(1, 5)), _pick(ns, range(1, 5))
        cases = tuple(c for c in cases if c[0] in ms_ and c[2] in ns_)
    for m, p, n in cases:
        params = f"m={m} p={p} n={n}"
        geom = arr.intersection_lattice(arr.reflection_hyperplanes(m, p, n))
        ok, _, witness = arr.iso_check(m, p, n, geom)
        out.append(check("lattice-isomorphism", params, ok, witness))
        comb = build_lattice(m, n, barred=(p == m and m > 1))
        gw, gW = geom.whitney_numbers()
        cw, cW = whitney_numbers(comb)
        same = _trim(gw) == _trim(cw) and _trim(gW) == _trim(cW)
        out.append(check("whitney(geometric=combinatorial)", params, same, f"{gW}/{gw} vs {cW}/{cw}"))
        ok, witness = arr.pseudoreflection_check(m, p, n)
        out.append(check("pseudoreflections", params, ok, witness))
    if ms is None or (4 in ms and (ns is None or 2 in ns)):
        a = arr.intersection_lattice(arr.reflection_hyperplanes(4, 1, 2))
        b = arr.intersection_lattice(arr.reflection_hyperplanes(4, 2, 2))
        out.append(check("lattice(p=1)=lattice(p=2)", "m=4 n=2", set(a.index) == set(b.index), "subspace sets differ"))
    for m in _pick(ms, range(1, 4)):
        for n in _pick(ns, range(1, 5)):
            for barred in (False, True) if m > 1 else (False,):
                L = build_lattice(m, n, barred)
                _, W = whitney_numbers(L)
                if m == 1:
                    want = [classical_stirling2(n, n - r) for r in range(n + 1)]
                else:
                    want = [stirling2(m, n, n - r, barred) for r in range(n + 1)]
                kind = "barred" if barred else "plain"
                out.append(check("W(L,n-k)=S(m,n,k)", f"m={m} n={n} {kind}", W == want, f"{W} vs {want}"))
    return out


def _trim(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return seq


def suite_mobius(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 4)):
        for n in _pick(ns, range(1, 5)):
            for barred in (False, True) if m > 1 else (False,):
                L = build_lattice(m, n, barred)
                out.append(full_count_check(L))
                out.append(product_formula_check(L))
    for n in range(1, 7) if ms is None or 1 in ms else ():
        L = build_lattice(1, n)
        w, W = whitney_numbers(L)
        ok_W = all(W[r] == classical_stirling2(n, n - r) for r in range(n))
        ok_w = all(w[r] == classical_stirling1(n, n - r) for r in range(n))
        out.append(check("classical whitney", f"n={n}", ok_W and ok_w, f"W={W} w={w}"))
    return out


def suite_first_kind(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(2, 4)):
        if m < 2:
            continue
        for n in _pick(ns, range(1, 5)):
            plain = build_lattice(m, n)
            w, _ = whitney_numbers(plain)
            want = [(-1) ** r * elementary_eval(r, coexponents(m, n))(1) for r in range(n + 1)]
            out.append(check("w(L,n-k)=s(m,n,k)", f"m={m} n={n}", w == want, f"{w} vs {want}"))
            for p, L, name in ((1, plain, "#c(m,n,k)=|w|"), (m, build_lattice(m, n, True), "#cbar(m,n,k)=|w|")):
                lw, _ = whitney_numbers(L)
                counts = [sum(1 for _ in enumerate_full(m, p, n, k=n - r)) for r in range(n + 1)]
                ok = counts == [abs(x) for x in lw]
                out.append(check(name, f"m={m} n={n}", ok, f"counts {counts} vs w {lw}"))
    return out


def suite_alt_sums(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 5)):
        for n in _pick(ns, range(0, 6)):
            out.append(alternating_sum_check("lattice", m, n))
            out.append(alternating_sum_check("super", m, n))
            if m >= 2:
                out.append(alternating_sum_check("cr", m, n))
    return out


def suite_involutions(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 4)):
        for n in _pick(ns, range(0, 5)):
            for flavor in ("super", "cr"):
                if flavor == "cr" and m < 2:
                    continue
                res = cancellation(m, n, flavor)
                out.append(res.report)
                want = _expected_fixed(m, n, flavor)
                got = sorted(str(w) for w in res.fixed)
                out.append(check(f"fixed-points({flavor})", f"m={m} n={n}", got == want, f"{got}"))
    return out


def _expected_fixed(m: int, n: int, flavor: str) -> List[str]:
    import itertools

    starts = [1 % m] if flavor == "super" else list(range(1, m))
    result = []
    for cs in itertools.product(starts, repeat=n):
        blocks = []
        for i, c in enumerate(cs, start=1):
            blocks.extend(frozenset([(i, (c + r) % m)]) for r in range(m))
        result.append(str(OrderedPartition(flavor, m, n, frozenset([(0, 0)]), tuple(blocks))))
    return sorted(result)


def suite_t_identities(ms: Range = None, ns: Range = None) -> Reports:
    return [verify_t_identities(m, n) for m in _pick(ms, range(1, 5)) for n in _pick(ns, range(0, 6))]


def suite_matrix(ms: Range = None, ns: Range = None) -> Reports:
    return [matrix_inverse_check(m, 8) for m in _pick(ms, range(1, 5))]


FALLING_X = ((1, 2, 3, 4, 5, 6, 7), (0, 2, 4, 6, 8, 10, 12), (3, -1, 4, 1, -5, 9, 2))


def suite_falling(ms: Range = None, ns: Range = None) -> Reports:
    return [verify_falling_factorial(n, xs) for n in _pick(ns, range(0, 7)) for xs in FALLING_X]


def suite_egf(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 5)):
        for k in range(0, 4):
            out.append(egf_check(m, k, 8))
        out.append(egf_bivariate_check(m, 8))
    return out


def suite_chan_rhoades(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 4)):
        for n in _pick(ns, range(0, 6)):
            for k in range(n + 1):
                out.append(chan_rhoades_check(m, n, k))
    return out


def suite_coinvariant(ms: Range = None, ns: Range = None) -> Reports:
    out = []
    for m in _pick(ms, range(1, 5)):
        for n in _pick(ns, range(0, 5)):
            out.append(artin_check(m, n))
            if m >= 2:
                out.append(super_artin_check(m, n))
                if m <= 3:
                    same = super_artin_enumerated(m, n) == super_artin_hilbert(m, n)
                    out.append(check("super-artin(enumerated)", f"m={m} n={n}", same, "listing differs"))
                    out.append(bijection_check(m, n))
    return out


SUITES: Dict[str, Callable[..., Reports]] = {
    "worked-values": suite_worked_values,
    "enumeration": suite_enumeration,
    "lattice": suite_lattice,
    "mobius": suite_mobius,
    "first-kind": suite_first_kind,
    "alt-sums": suite_alt_sums,
    "involutions": suite_involutions,
    "falling": suite_falling,
    "t-identities": suite_t_identities,
    "matrix": suite_matrix,
    "egf": suite_egf,
    "coinvariant": suite_coinvariant,
    "chan-rhoades": suite_chan_rhoades,
}


def run_suite(name: str, ms: Range = None, ns: Range = None) -> Reports:
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn(ms, ns))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](ms, ns)
