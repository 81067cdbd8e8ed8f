"""One test per acceptance criterion.

Each test records a single ``CRITERION n: PASS|FAIL ...`` line, printed in
the terminal summary, then asserts.  Run directly with
``python3 tests/test_acceptance.py`` to get just the summary lines.
"""

import itertools
import os
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from crgstir.arrangement import ISO_CASES, intersection_lattice, iso_check, reflection_hyperplanes
from crgstir.coinvariant import (
    beta_phi,
    bijection_check,
    inversion_data,
    ordered_super_series,
    super_artin_hilbert,
)
from crgstir.colored import (
    OrderedPartition,
    enumerate_full,
    enumerate_partitions,
    inv,
    parse_ordered,
    parse_partition,
    parse_super,
)
from crgstir.involution import cancellation
from crgstir.lattice import build_lattice, full_count_check, product_formula_check, whitney_numbers
from crgstir.qpoly import IntPoly, elementary_eval, q_bracket, q_factorial, q_mstep_factorial
from crgstir.report import FAILED
from crgstir.stirling import (
    alternating_sum,
    alternating_target,
    chan_rhoades_check,
    classical_q_stirling2,
    classical_stirling1,
    classical_stirling2,
    coexponents,
    egf_bivariate_check,
    egf_check,
    matrix_inverse_check,
    q_stirling2,
    stirling2,
    unified_degree_formula,
    verify_falling_factorial,
    verify_t_identities,
)


class Criterion:
    """Collects named sub-checks; the first few failures become the summary."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.failures = []
        self.checked = 0
        self.start = time.perf_counter()

    def expect(self, ok, what):
        self.checked += 1
        if not ok:
            self.failures.append(what)

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    def finish(self):
        status = "PASS" if not self.failures else "FAIL"
        line = f"CRITERION {self.number:>2}: {status}  {self.title} ({self.checked} checks, {self.elapsed:.1f}s)"
        if self.failures:
            shown = "; ".join(self.failures[:3])
            more = f"; +{len(self.failures) - 3} more" if len(self.failures) > 3 else ""
            line += f"  failing: {shown}{more}"
        ACCEPTANCE_LINES[self.number] = line
        print(line)
        assert not self.failures, line


def inv_series(partitions):
    out = IntPoly()
    for sigma in partitions:
        out = out + IntPoly.monomial(inv(sigma))
    return out


def test_criterion_01_enumeration_equals_closed_form():
    c = Criterion(1, "enumeration = closed form, m<=4, n<=5, plain and barred")
    for m in range(1, 5):
        for barred in (False, True) if m >= 2 else (False,):
            for n in range(6):
                for k in range(n + 1):
                    got = inv_series(enumerate_partitions(m, n, k, barred))
                    want = q_stirling2(m, n, k, barred)
                    kind = "barred" if barred else "plain"
                    c.expect(got == want, f"{kind} m={m} n={n} k={k}")
    c.expect(c.elapsed < 60, f"runtime {c.elapsed:.1f}s >= 60s")
    c.finish()


def test_criterion_02_worked_values():
    c = Criterion(2, "worked values: inv 11, super inv 5, eta/T, standard form")
    raw = parse_partition("0 4^0 4^1 4^2 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2", 3)
    std = parse_partition("0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0", 3)
    c.expect(str(raw) == "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0", f"standard form {raw}")
    c.expect(raw == std, "parsed forms differ")
    c.expect(inv(std) == 11, f"inv={inv(std)} (want 11)")
    sup = parse_super("0 1^2 1^0 1^1 3^2 3^0 3^1 | 2^1/2^2/2^0", 3)
    c.expect(inv(sup) == 5, f"super inv={inv(sup)} (want 5)")
    omega = parse_ordered("(0 4^2 4^0 4^1 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2)", 3, "super")
    eta, T = inversion_data(omega)
    c.expect(eta == (0, 0, 4, 7), f"eta={eta} (want (0, 0, 4, 7))")
    c.expect(T == frozenset({3, 4}), f"T={sorted(T)} (want [3, 4])")
    c.finish()


def test_criterion_03_lattice_isomorphism():
    c = Criterion(3, "lattice isomorphism on 13 triples, Whitney agreement, W(L,n-k)=S")
    for m, p, n in ISO_CASES:
        geom = intersection_lattice(reflection_hyperplanes(m, p, n))
        ok, _, witness = iso_check(m, p, n, geom)
        c.expect(ok, f"iso m={m} p={p} n={n}: {witness}")
        barred = p == m and m > 1
        L = build_lattice(m, n, barred)
        gw, gW = geom.whitney_numbers()
        cw, cW = whitney_numbers(L)
        c.expect(list(gw) == cw[: len(gw)] and not any(cw[len(gw) :]), f"w m={m} p={p} n={n}")
        c.expect(list(gW) == cW[: len(gW)] and not any(cW[len(gW) :]), f"W m={m} p={p} n={n}")
        for k in range(n + 1):
            want = classical_stirling2(n, k) if m == 1 else stirling2(m, n, k, barred)
            c.expect(cW[n - k] == want, f"W(L,n-k) m={m} p={p} n={n} k={k}")
    c.expect(c.elapsed < 120, f"runtime {c.elapsed:.1f}s >= 120s")
    c.finish()


def test_criterion_04_mobius_three_way():
    c = Criterion(4, "Mobius: recursive = signed full count = product; classical n<=6")
    for m in range(1, 4):
        for n in range(1, 5):
            for barred in (False, True) if m > 1 else (False,):
                L = build_lattice(m, n, barred)
                r = full_count_check(L)
                c.expect(r.ok, f"full count {r.params}: {r.witness}")
                r = product_formula_check(L)
                if barred:
                    c.expect(r.status != FAILED, f"barred product {r.params} errored")
                else:
                    c.expect(r.ok, f"product {r.params}: {r.witness}")
    for n in range(1, 7):
        w, W = whitney_numbers(build_lattice(1, n))
        for k in range(1, n + 1):
            c.expect(W[n - k] == classical_stirling2(n, k), f"classical W n={n} k={k}")
            c.expect(w[n - k] == classical_stirling1(n, k), f"classical w n={n} k={k}")
    c.finish()


def test_criterion_05_first_kind():
    c = Criterion(5, "first kind: w = signed e(coexponents); #c and #cbar = |w|")
    for m in (2, 3):
        for n in range(1, 5):
            plain = build_lattice(m, n)
            barred = build_lattice(m, n, True)
            w, _ = whitney_numbers(plain)
            wb, _ = whitney_numbers(barred)
            for k in range(n + 1):
                r = n - k
                want = (-1) ** r * elementary_eval(r, coexponents(m, n))(1)
                c.expect(w[r] == want, f"w m={m} n={n} k={k}")
                count = sum(1 for _ in enumerate_full(m, 1, n, k=k))
                c.expect(count == abs(w[r]), f"#c m={m} n={n} k={k}: {count} vs {abs(w[r])}")
                count_b = sum(1 for _ in enumerate_full(m, m, n, k=k))
                c.expect(count_b == abs(wb[r]), f"#cbar m={m} n={n} k={k}: {count_b} vs {abs(wb[r])}")
    c.finish()


def test_criterion_06_alternating_sums():
    c = Criterion(6, "alternating sums of ordered q-Stirling numbers")
    for m in range(1, 5):
        for n in range(6):
            c.expect(alternating_sum("lattice", m, n) == IntPoly.const(1), f"lattice m={m} n={n}")
            c.expect(alternating_sum("super", m, n) == IntPoly.const(1), f"super m={m} n={n}")
            if m >= 2:
                c.expect(alternating_sum("cr", m, n) == q_bracket(m - 1) ** n, f"cr m={m} n={n}")
    c.finish()


def test_criterion_07_involutions():
    c = Criterion(7, "sign-reversing involutions: involutive, weight preserving, fixed points")
    for m in range(1, 4):
        for n in range(5):
            for flavor in ("super", "cr"):
                if flavor == "cr" and m < 2:
                    continue
                res = cancellation(m, n, flavor)
                c.expect(res.report.ok, f"{flavor} m={m} n={n}: {res.report.witness}")
                starts = [1 % m] if flavor == "super" else range(1, m)
                want = {
                    str(OrderedPartition(flavor, m, n, frozenset([(0, 0)]), _blocks(m, cs)))
                    for cs in itertools.product(starts, repeat=n)
                }
                got = {str(w) for w in res.fixed}
                c.expect(got == want, f"fixed points {flavor} m={m} n={n}")
                if flavor == "cr":
                    c.expect(len(res.fixed) == (m - 1) ** n, f"cr fixed count m={m} n={n}")
                c.expect(res.total == alternating_target(flavor, m, n), f"fixed-point sum {flavor} m={m} n={n}")
    c.finish()


def _blocks(m, starts):
    blocks = []
    for i, s in enumerate(starts, start=1):
        blocks.extend(frozenset([(i, (s + r) % m)]) for r in range(m))
    return tuple(blocks)


FALLING_X = ((1, 2, 3, 4, 5, 6, 7), (0, 2, 4, 6, 8, 10, 12), (3, -1, 4, 1, -5, 9, 2))


def test_criterion_08_polynomial_and_series_identities():
    c = Criterion(8, "falling factorial, t-identities, matrix inverse, EGFs")
    for n in range(7):
        for xs in FALLING_X:
            c.expect(verify_falling_factorial(n, xs).ok, f"falling n={n} x={xs}")
    for m in range(1, 5):
        for n in range(6):
            r = verify_t_identities(m, n)
            c.expect(r.ok, f"t-identities m={m} n={n}: {r.witness}")
        c.expect(matrix_inverse_check(m, 8).ok, f"matrix m={m}")
        for k in range(4):
            r = egf_check(m, k, 8)
            c.expect(r.ok, f"egf (c)/(e) m={m} k={k}: {r.witness}")
        r = egf_bivariate_check(m, 8)
        c.expect(r.ok, f"egf (d)/(f) corrected m={m}: {r.witness}")
        d = [x for x in r.discrepancies if x.startswith("(d)")]
        f = [x for x in r.discrepancies if x.startswith("(f)")]
        c.expect(bool(d) and "x^0" in d[0], f"printed (d) witness missing m={m}")
        c.expect(bool(f) and ("x^0" in f[0] or "x^1" in f[0]), f"printed (f) witness missing m={m}")
    c.finish()


def test_criterion_09_coinvariant_combinatorics():
    c = Criterion(9, "staircases, super Artin series, bijection, Chan-Rhoades")
    beta, phi = beta_phi({1, 3, 4, 6, 9}, 3, 9)
    c.expect(beta == (1, 2, 4, 4, 5, 7, 8, 11, 13) and phi == (1, 2, 1, 0, 1), f"beta={beta} phi={phi}")
    for m in (2, 3):
        for n in range(5):
            series = super_artin_hilbert(m, n)
            c.expect(series == ordered_super_series(m, n), f"super Artin m={m} n={n}")
            c.expect(series.coefficient(0) == q_mstep_factorial(n * m, m), f"t^0 m={m} n={n}")
            c.expect(series.coefficient(n) == q_bracket(m - 1) ** n, f"t^n m={m} n={n}")
            r = bijection_check(m, n)
            c.expect(r.ok, f"bijection m={m} n={n}: {r.witness}")
        for n in range(6):
            for k in range(n + 1):
                r = chan_rhoades_check(m, n, k)
                c.expect(r.ok, f"Chan-Rhoades m={m} n={n} k={k}: {r.witness}")
    for n in range(6):
        for k in range(n + 1):
            want = q_factorial(k) * classical_q_stirling2(n, k)
            c.expect(unified_degree_formula(1, n, k) == want, f"unified m=1 n={n} k={k}")
    c.finish()


def _verify_all(seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    cmd = [sys.executable, "-m", "crgstir", "verify", "--suite", "all"]
    return subprocess.run(cmd, capture_output=True, env=env, timeout=600)


def test_criterion_10_determinism():
    c = Criterion(10, "verify --suite all is byte-identical across runs and under 10 minutes")
    first = _verify_all(0)
    elapsed_first = c.elapsed
    second = _verify_all(12345)
    c.expect(first.stdout == second.stdout, "stdout differs between runs")
    c.expect(first.returncode == second.returncode, "exit codes differ between runs")
    c.expect(len(first.stdout) > 0, "empty report")
    c.expect(elapsed_first < 600, f"runtime {elapsed_first:.1f}s >= 600s")
    c.finish()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
