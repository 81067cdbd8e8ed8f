"""Stirling numbers for G(m,p,n), their q-analogues and the identity checks.

Closed forms are complete homogeneous / elementary symmetric polynomial
evaluations at q-brackets.  The ``verify_*`` and ``*_check`` functions
expand both sides of an identity exactly and return a
``VerificationReport`` instead of raising.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .qpoly import (
    BivarPoly,
    IntPoly,
    RationalSeries,
    SeriesDomainError,
    elementary_eval,
    homogeneous_eval,
    q_bracket,
    q_factorial,
    q_mstep_factorial,
    series_map,
    substitute_power,
)
from .report import DISCREPANCY, VerificationReport, check

ONE = IntPoly.const(1)
ZERO_POLY = IntPoly()

FAMILIES = (
    "second",
    "second-barred",
    "first",
    "super",
    "ordered-lattice",
    "ordered-super",
    "ordered-cr",
)


# ------------------------------------------------------------ closed forms


def q_stirling2(m: int, n: int, k: int, barred: bool = False) -> IntPoly:
    """``S[m,n,k] = h_{n-k}([1],[m+1],...,[km+1])``; barred subtracts
    ``[n]_{q^m} h_{n-k-1}([m],...,[km])``."""
    if m < 1:
        raise ValueError("m must be positive")
    if n < 0 or k < 0 or k > n:
        return ZERO_POLY
    plain = homogeneous_eval(n - k, [q_bracket(j * m + 1) for j in range(k + 1)])
    if not barred:
        return plain
    corr = homogeneous_eval(n - k - 1, [q_bracket(j * m) for j in range(1, k + 1)])
    return plain - substitute_power(q_bracket(n), m) * corr


@lru_cache(maxsize=None)
def q_stirling2_recursive(m: int, n: int, k: int) -> IntPoly:
    """``S[m,n,k]`` from ``S[m,n-1,k-1] + [km+1] S[m,n-1,k]``."""
    if n == 0:
        return ONE if k == 0 else ZERO_POLY
    if k < 0 or k > n:
        return ZERO_POLY
    return q_stirling2_recursive(m, n - 1, k - 1) + q_bracket(k * m + 1) * q_stirling2_recursive(m, n - 1, k)


@lru_cache(maxsize=None)
def _zero_free(m: int, n: int, k: int) -> IntPoly:
    # partitions whose zero block is {0}: h_{n-k}([m],[2m],...,[km])
    if n == 0:
        return ONE if k == 0 else ZERO_POLY
    if k < 0 or k > n:
        return ZERO_POLY
    return _zero_free(m, n - 1, k - 1) + q_bracket(k * m) * _zero_free(m, n - 1, k)


@lru_cache(maxsize=None)
def single_base_zero_gf(m: int, n: int, k: int) -> IntPoly:
    """inv generating function of partitions whose zero block holds exactly one base.

    Removing the largest base: it opens a tuple, joins one of the ``km``
    nonzero blocks, or is the zero-block base, in which case its color 0
    inverts with all ``km`` blocks and the rest has zero block ``{0}``.
    """
    if n == 0 or k < 0 or k > n:
        return ZERO_POLY
    return (
        single_base_zero_gf(m, n - 1, k - 1)
        + q_bracket(k * m) * single_base_zero_gf(m, n - 1, k)
        + IntPoly.monomial(k * m) * _zero_free(m, n - 1, k)
    )


def q_stirling2_barred_recursive(m: int, n: int, k: int) -> IntPoly:
    """Barred ``S[m,n,k]`` as plain minus :func:`single_base_zero_gf`."""
    return q_stirling2(m, n, k) - single_base_zero_gf(m, n, k)


def stirling2(m: int, n: int, k: int, barred: bool = False) -> int:
    return q_stirling2(m, n, k, barred)(1)


def coexponents(m: int, n: int) -> list:
    """Coexponents ``(k-1)m+1`` of G(m,p,n), p < m."""
    return [(j - 1) * m + 1 for j in range(1, n + 1)]


def q_stirling1(m: int, n: int, k: int) -> IntPoly:
    """``s[m,n,k] = (-1)^(n-k) e_{n-k}([1],[m+1],...,[(n-1)m+1])``."""
    if m < 1:
        raise ValueError("m must be positive")
    if n < 0 or k < 0 or k > n:
        return ZERO_POLY
    e = elementary_eval(n - k, [q_bracket(c) for c in coexponents(m, n)])
    return e if (n - k) % 2 == 0 else -e


def stirling1(m: int, n: int, k: int) -> int:
    return q_stirling1(m, n, k)(1)


def super_q_stirling(m: int, n: int, k: int) -> IntPoly:
    """``h_{n-k}([m-1],[2m-1],...,[(k+1)m-1])``."""
    if n < 0 or k < 0 or k > n:
        return ZERO_POLY
    return homogeneous_eval(n - k, [q_bracket(j * m - 1) for j in range(1, k + 2)])


def ordered_q_stirling(m: int, n: int, k: int, variant: str) -> IntPoly:
    """Lattice-, super- or Chan-Rhoades-ordered q-Stirling numbers."""
    if variant == "lattice":
        return q_mstep_factorial((k - 1) * m + 2, m) * q_stirling2(m, n, k)
    if variant == "super":
        return q_mstep_factorial(k * m, m) * super_q_stirling(m, n, k)
    if variant == "cr":
        return q_mstep_factorial(k * m, m) * q_stirling2(m, n, k)
    raise ValueError(f"unknown ordered variant {variant!r}")


def classical_q_stirling2(n: int, k: int) -> IntPoly:
    """Type A ``S[n,k] = h_{n-k}([1],...,[k])``."""
    if n < 0 or k < 0 or k > n:
        return ZERO_POLY
    return homogeneous_eval(n - k, [q_bracket(j) for j in range(1, k + 1)])


def classical_stirling2(n: int, k: int) -> int:
    """Classical S(n,k), read off the m=1 colored model (zero block acts as an extra block)."""
    if n == 0 or k == 0:
        return int(n == k)
    return stirling2(1, n - 1, k - 1)


def classical_stirling1(n: int, k: int) -> int:
    """Signed classical s(n,k), read off the m=1 first-kind family."""
    if n == 0 or k == 0:
        return int(n == k)
    return stirling1(1, n - 1, k - 1)


def alternating_sum(variant: str, m: int, n: int) -> IntPoly:
    """``sum_k (-q)^(n-k) O[m,n,k]``; the cr variant uses ``-q^(m-1)``."""
    if variant == "cr":
        step = -IntPoly.monomial(m - 1)
    elif variant in ("lattice", "super"):
        step = -IntPoly.monomial(1)
    else:
        raise ValueError(f"unknown ordered variant {variant!r}")
    total = ZERO_POLY
    for k in range(n + 1):
        total = total + step ** (n - k) * ordered_q_stirling(m, n, k, variant)
    return total


def alternating_target(variant: str, m: int, n: int) -> IntPoly:
    if variant == "cr":
        return q_bracket(m - 1) ** n
    return ONE


class StirlingTable:
    """Memoized ``(n, k) -> IntPoly`` table for one family and one ``m``."""

    def __init__(self, m: int, family: str):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.m = m
        self.family = family
        self._cells: dict = {}

    def _compute(self, n, k):
        m, f = self.m, self.family
        if f == "second":
            return q_stirling2(m, n, k)
        if f == "second-barred":
            return q_stirling2(m, n, k, barred=True)
        if f == "first":
            return q_stirling1(m, n, k)
        if f == "super":
            return super_q_stirling(m, n, k)
        return ordered_q_stirling(m, n, k, f.split("-", 1)[1])

    def __getitem__(self, nk) -> IntPoly:
        n, k = nk
        if k < 0 or k > n:
            return ZERO_POLY
        if nk not in self._cells:
            self._cells[nk] = self._compute(n, k)
        return self._cells[nk]

    def rows(self, n_max: int):
        return [[self[n, k] for k in range(n + 1)] for n in range(n_max + 1)]


# ------------------------------------------------------ identity harness


def _falling(values) -> IntPoly:
    """``(t - x_1)...(t - x_k)`` with integer x's, as an IntPoly in t."""
    out = ONE
    for x in values:
        out = out * IntPoly((-x, 1))
    return out


def verify_falling_factorial(n: int, x_values) -> VerificationReport:
    """``t^n = sum_k h_{n-k}(x_1..x_{k+1}) (t-x_1)...(t-x_k)`` with the x's specialized."""
    xs = list(x_values)
    if len(xs) < n:
        raise ValueError("need at least n x-values")
    lhs = IntPoly.monomial(n)
    rhs = ZERO_POLY
    for k in range(n + 1):
        rhs = rhs + homogeneous_eval(n - k, xs[: k + 1]) * _falling(xs[:k])
    return check("falling-factorial", f"n={n} x={tuple(xs)}", lhs == rhs, f"lhs={lhs} rhs={rhs}")


def _t_falling(brackets) -> BivarPoly:
    out = BivarPoly.coerce(1)
    for b in brackets:
        out = out * BivarPoly((-b, 1))
    return out


def _identity_a_rhs(m: int, n: int, printed: bool) -> BivarPoly:
    rhs = BivarPoly()
    for k in range(n + 1):
        factors = [q_bracket((j - 1) * m + 1) for j in range(1, k + 1)]
        if printed and k:
            factors[-1] = q_bracket(k * m - k + 1)
        rhs = rhs + BivarPoly.coerce(q_stirling2(m, n, k)) * _t_falling(factors)
    return rhs


def verify_t_identities(m: int, n: int) -> VerificationReport:
    """``t^n = sum_k S[m,n,k] prod_{j<=k} (t-[(j-1)m+1])`` and
    ``sum_k s[m,n,k] t^k = prod_{j<=n} (t-[(j-1)m+1])``."""
    t_n = BivarPoly([0] * n + [1])
    a_ok = _identity_a_rhs(m, n, printed=False) == t_n
    b_lhs = BivarPoly([q_stirling1(m, n, k) for k in range(n + 1)])
    b_rhs = _t_falling([q_bracket(c) for c in coexponents(m, n)])
    b_ok = b_lhs == b_rhs
    disc = []
    if _identity_a_rhs(m, n, printed=True) != t_n:
        disc.append(f"(a) with printed final factor [km-k+1] fails at m={m}, n={n}")
    witness = ""
    if not a_ok:
        witness = "(a) expansion differs from t^n"
    elif not b_ok:
        witness = f"(b) lhs={b_lhs} rhs={b_rhs}"
    return check("t-identities(a,b)", f"m={m} n={n}", a_ok and b_ok, witness, discrepancies=tuple(disc))


def _series_from(values, order) -> RationalSeries:
    return RationalSeries((Fraction(v, factorial(i)) for i, v in enumerate(values)), order)


def _first_mismatch(a: RationalSeries, b: RationalSeries):
    for i, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return i, x, y
    return None


def egf_check(m: int, k: int, order: int = 8) -> VerificationReport:
    """Single-k exponential generating functions for both kinds."""
    if order > 12:
        raise ValueError("order must be <= 12")
    x = RationalSeries.x(order)
    ex = series_map("exp", x)
    emx = series_map("exp", m * x)
    log1 = series_map("log", 1 + m * x)
    rhs_c = ex * ((emx - 1) / m) ** k / factorial(k)
    lhs_c = _series_from([stirling2(m, n, k) for n in range(order + 1)], order)
    rhs_e = (log1 ** k) * series_map("pow", 1 + m * x, Fraction(-1, m)) / (factorial(k) * m**k)
    lhs_e = _series_from([stirling1(m, n, k) for n in range(order + 1)], order)
    mc, me = _first_mismatch(lhs_c, rhs_c), _first_mismatch(lhs_e, rhs_e)
    witness = ""
    if mc:
        witness = f"(c) x^{mc[0]}: {mc[1]} != {mc[2]}"
    elif me:
        witness = f"(e) x^{me[0]}: {me[1]} != {me[2]}"
    return check("egf(c,e)", f"m={m} k={k} order={order}", not (mc or me), witness)


# Series in x whose coefficients are polynomials in t: list of lists of Fraction.


def _tp_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _tp_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _tp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _ts_exp(g):
    """exp of a t-coefficient series with zero constant term."""
    if _tp_trim(g[0]):
        raise SeriesDomainError(f"exp requires constant term 0, got {g[0]}")
    f = [[Fraction(1)]] + [[] for _ in g[1:]]
    for k in range(1, len(g)):
        acc = []
        for j in range(1, k + 1):
            acc = _tp_add(acc, [j * c for c in _tp_mul(g[j], f[k - j])])
        f[k] = _tp_trim(c / k for c in acc)
    return f


def _ts_from_rational(s: RationalSeries, tpoly):
    return [_tp_trim(_tp_mul([c], tpoly)) for c in s.coeffs]


def _ts_lhs(values_by_nk, order):
    return [
        _tp_trim(Fraction(values_by_nk(n, k), factorial(n)) for k in range(n + 1)) for n in range(order + 1)
    ]


def _ts_mismatch(a, b):
    for n, (x, y) in enumerate(zip(a, b)):
        if _tp_trim(x) != _tp_trim(y):
            return n, x, y
    return None


def _fmt_tp(a):
    terms = [f"{c}*t^{i}" for i, c in enumerate(a) if c]
    return " + ".join(terms) or "0"


def egf_bivariate_check(m: int, order: int = 8) -> VerificationReport:
    """Bivariate EGFs ``exp(x + t(e^{mx}-1)/m)`` and ``(1+mx)^((t-1)/m)``.

    The printed variants ``exp(1 + ...)`` and exponent ``(1+t)/m`` are also
    evaluated; their first mismatching coefficient is reported as a
    discrepancy.
    """
    if order > 12:
        raise ValueError("order must be <= 12")
    x = RationalSeries.x(order)
    u = (series_map("exp", m * x) - 1) / m
    log1 = series_map("log", 1 + m * x) / m

    lhs_d = _ts_lhs(lambda n, k: stirling2(m, n, k), order)
    arg_d = [_tp_add(a, b) for a, b in zip(_ts_from_rational(x, [1]), _ts_from_rational(u, [0, 1]))]
    rhs_d = _ts_exp(arg_d)

    lhs_f = _ts_lhs(lambda n, k: stirling1(m, n, k), order)
    rhs_f = _ts_exp(_ts_from_rational(log1, [-1, 1]))

    disc = []
    printed_d = [list(c) for c in arg_d]
    printed_d[0] = _tp_add(printed_d[0], [1])
    try:
        _ts_exp(printed_d)
    except SeriesDomainError:
        disc.append("(d) printed exp(1+t(e^{mx}-1)/m) has x^0 coefficient e (irrational); lhs has 1")
    printed_f = _ts_exp(_ts_from_rational(log1, [1, 1]))
    mf = _ts_mismatch(lhs_f, printed_f)
    if mf:
        disc.append(f"(f) printed exponent (1+t)/m: x^{mf[0]} coefficient {_fmt_tp(mf[2])} != {_fmt_tp(mf[1])}")

    md, mf2 = _ts_mismatch(lhs_d, rhs_d), _ts_mismatch(lhs_f, rhs_f)
    witness = ""
    if md:
        witness = f"(d) x^{md[0]}: {_fmt_tp(md[1])} != {_fmt_tp(md[2])}"
    elif mf2:
        witness = f"(f) x^{mf2[0]}: {_fmt_tp(mf2[1])} != {_fmt_tp(mf2[2])}"
    return check(
        "egf(d,f) corrected", f"m={m} order={order}", not (md or mf2), witness, discrepancies=tuple(disc)
    )


def matrix_inverse_check(m: int, N: int) -> VerificationReport:
    """``[s[m,n,k]] [S[m,n,k]] = I`` on the leading ``N x N`` block."""
    s = StirlingTable(m, "first")
    S = StirlingTable(m, "second")
    for n in range(N):
        for k in range(N):
            acc = ZERO_POLY
            for j in range(k, n + 1):
                acc = acc + s[n, j] * S[j, k]
            if acc != IntPoly.const(int(n == k)):
                return check("matrix-inverse", f"m={m} N={N}", False, f"entry ({n},{k}) = {acc}")
    return check("matrix-inverse", f"m={m} N={N}", True)


def chan_rhoades_sum(m: int, n: int, k: int) -> IntPoly:
    """``sum_i C(n,i) q^(n-k-i) [m]^(n-i) ([k]! S[n-i,k])|_{q^m}``."""
    total = ZERO_POLY
    for i in range(n - k + 1):
        inner = substitute_power(q_factorial(k) * classical_q_stirling2(n - i, k), m)
        total = total + comb(n, i) * IntPoly.monomial(n - k - i) * q_bracket(m) ** (n - i) * inner
    return total


def unified_degree_formula(m: int, n: int, k: int) -> IntPoly:
    """``prod_{i<=k} [d_i] * h_{n-k}([e*_1],...,[e*_{k+1}])`` for G(m,1,n)."""
    if m == 1:
        degrees = list(range(1, k + 1))
        coexp = [i - 1 for i in range(1, k + 2)]
    else:
        degrees = [i * m for i in range(1, k + 1)]
        coexp = [(i - 1) * m + 1 for i in range(1, k + 2)]
    prod = ONE
    for d in degrees:
        prod = prod * q_bracket(d)
    return prod * homogeneous_eval(n - k, [q_bracket(e) for e in coexp])


def chan_rhoades_check(m: int, n: int, k: int) -> VerificationReport:
    params = f"m={m} n={n} k={k}"
    unified = unified_degree_formula(m, n, k)
    if m == 1:
        target = q_factorial(k) * classical_q_stirling2(n, k)
        return check("chan-rhoades(unified)", params, unified == target, f"{unified} != {target}")
    rhs = q_mstep_factorial(k * m, m) * homogeneous_eval(n - k, [q_bracket(j * m + 1) for j in range(k + 1)])
    lhs = chan_rhoades_sum(m, n, k)
    middle = ZERO_POLY
    for i in range(n - k + 1):
        middle = middle + comb(n, i) * (IntPoly.monomial(1) * q_bracket(m)) ** (n - k - i) * substitute_power(
            classical_q_stirling2(n - i, k), m
        )
    middle = q_mstep_factorial(k * m, m) * middle
    cr = ordered_q_stirling(m, n, k, "cr")
    witness = ""
    if lhs != rhs:
        witness = f"binomial sum {lhs} != {rhs}"
    elif middle != rhs:
        witness = f"factored sum {middle} != {rhs}"
    elif unified != cr:
        witness = f"unified {unified} != {cr}"
    return check("chan-rhoades", params, not witness, witness)


def alternating_sum_check(variant: str, m: int, n: int) -> VerificationReport:
    got = alternating_sum(variant, m, n)
    want = alternating_target(variant, m, n)
    return check(f"alt-sum({variant})", f"m={m} n={n}", got == want, f"{got} != {want}")


def printed_discrepancy(identity: str, params: str, findings) -> VerificationReport:
    return VerificationReport(identity, params, DISCREPANCY, discrepancies=tuple(findings))
