from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from crgstir.colored import enumerate_ordered, enumerate_partitions, enumerate_super, inv
from crgstir.qpoly import IntPoly, q_bracket
from crgstir.stirling import (
    StirlingTable,
    alternating_sum_check,
    chan_rhoades_check,
    classical_stirling1,
    classical_stirling2,
    egf_bivariate_check,
    egf_check,
    matrix_inverse_check,
    ordered_q_stirling,
    q_stirling1,
    q_stirling2,
    q_stirling2_barred_recursive,
    q_stirling2_recursive,
    stirling1,
    stirling2,
    super_q_stirling,
    verify_falling_factorial,
    verify_t_identities,
)

from test_colored import set_partitions


def inv_series(partitions):
    out = IntPoly()
    for sigma in partitions:
        out = out + IntPoly.monomial(inv(sigma))
    return out


@pytest.mark.parametrize("m, n", [(1, 4), (2, 3), (2, 4), (3, 3), (4, 2)])
def test_second_kind_is_inversion_series(m, n):
    for k in range(n + 1):
        assert q_stirling2(m, n, k) == inv_series(enumerate_partitions(m, n, k))
        assert q_stirling2_recursive(m, n, k) == q_stirling2(m, n, k)


@pytest.mark.parametrize("m, n", [(2, 3), (2, 4), (3, 3), (4, 2)])
def test_barred_recursion_is_inversion_series(m, n):
    for k in range(n + 1):
        got = q_stirling2_barred_recursive(m, n, k)
        assert got == inv_series(enumerate_partitions(m, n, k, barred=True))
        assert got(1) == stirling2(m, n, k, barred=True)


def test_barred_closed_form_counts_are_right_at_q_one():
    for m in (2, 3, 4):
        for n in range(6):
            for k in range(n + 1):
                assert q_stirling2(m, n, k, barred=True)(1) == q_stirling2_barred_recursive(m, n, k)(1)


def test_barred_closed_form_differs_as_polynomial():
    # the closed-form difference has negative coefficients at m=2, n=3, k=1
    closed = q_stirling2(2, 3, 1, barred=True)
    enumerated = inv_series(enumerate_partitions(2, 3, 1, barred=True))
    assert closed != enumerated
    assert min(closed.coeffs) < 0
    assert closed(1) == enumerated(1)


@pytest.mark.parametrize("m, n", [(2, 3), (3, 3), (3, 2)])
def test_super_is_inversion_series(m, n):
    for k in range(n + 1):
        assert super_q_stirling(m, n, k) == inv_series(enumerate_super(m, n, k))


@pytest.mark.parametrize("variant", ["super", "cr"])
@pytest.mark.parametrize("m, n", [(2, 3), (3, 2)])
def test_ordered_is_inversion_series(variant, m, n):
    for k in range(n + 1):
        assert ordered_q_stirling(m, n, k, variant) == inv_series(enumerate_ordered(m, n, k, variant))


def test_classical_second_kind_matches_set_partition_count():
    for n in range(7):
        counts = Counter(len(p) for p in set_partitions(list(range(n))))
        for k in range(n + 1):
            assert classical_stirling2(n, k) == counts.get(k, 0)


def _invert_unitriangular(rows):
    """Inverse of a lower unitriangular matrix of polynomials by forward substitution."""
    N = len(rows)
    out = [[IntPoly() for _ in range(N)] for _ in range(N)]
    for n in range(N):
        out[n][n] = IntPoly.const(1)
        for k in range(n - 1, -1, -1):
            acc = IntPoly()
            for j in range(k + 1, n + 1):
                acc = acc + out[n][j] * rows[j][k]
            out[n][k] = -acc
    return out


@pytest.mark.parametrize("m", [1, 2, 3])
def test_first_kind_inverts_enumerated_second_kind(m):
    N = 5
    S = [[inv_series(enumerate_partitions(m, n, k)) if k <= n else IntPoly() for k in range(N)] for n in range(N)]
    s = _invert_unitriangular(S)
    for n in range(N):
        for k in range(n + 1):
            assert q_stirling1(m, n, k) == s[n][k]
            assert stirling1(m, n, k) * (-1) ** (n - k) >= 0


def test_classical_first_kind_small_values():
    assert [classical_stirling1(4, k) for k in range(5)] == [0, -6, 11, -6, 1]


def test_small_table_values():
    assert q_stirling2(2, 2, 1) == IntPoly([2, 1, 1])
    assert q_stirling1(2, 2, 1) == -(q_bracket(1) + q_bracket(3))
    assert StirlingTable(2, "second")[1, 1] == IntPoly.const(1)
    assert StirlingTable(2, "second")[1, 3] == IntPoly()


@given(st.integers(1, 4), st.integers(0, 5))
@settings(max_examples=30, deadline=None)
def test_row_sum_recursion(m, n):
    # S[m,n+1,k] = S[m,n,k-1] + [km+1] S[m,n,k]
    for k in range(n + 2):
        lhs = q_stirling2(m, n + 1, k)
        rhs = q_stirling2(m, n, k - 1) + q_bracket(k * m + 1) * q_stirling2(m, n, k)
        assert lhs == rhs


@pytest.mark.parametrize("m", [1, 2, 3])
def test_identity_harness(m):
    for n in range(5):
        assert verify_t_identities(m, n).ok
        for variant in ("super", "cr"):
            assert alternating_sum_check(variant, m, n).ok
        for k in range(n + 1):
            assert chan_rhoades_check(m, n, k).ok
    assert matrix_inverse_check(m, 6).ok
    for k in range(4):
        assert egf_check(m, k, 8).ok
    assert egf_bivariate_check(m, 8).ok


def test_printed_variants_are_reported():
    report = egf_bivariate_check(2, 6)
    assert any("(d)" in d for d in report.discrepancies)
    assert any("(f)" in d for d in report.discrepancies)
    assert verify_t_identities(2, 3).discrepancies


def test_falling_factorial_any_integers():
    assert verify_falling_factorial(4, [3, -1, 7, 2, 5]).ok


def test_egf_order_guard():
    with pytest.raises(ValueError):
        egf_check(2, 1, 13)
