"""Staircases, the (super) Artin sets, and the insertion bijection onto ordered super partitions.

A super Artin element is a pair ``(T, alpha)`` with ``T`` a subset of
``[n]`` and ``alpha <= beta(T)`` componentwise.  Its weight is
``q^|alpha| t^#T``.
"""

from __future__ import annotations

import itertools
from typing import Iterator, List, Sequence, Tuple

from .colored import ZERO, OrderedPartition, inversions_by_base, minb
from .qpoly import BivarPoly, IntPoly, q_bracket, q_mstep_factorial
from .report import VerificationReport, check
from .stirling import ordered_q_stirling


def staircase(m: int, n: int) -> Tuple[int, ...]:
    """``(m-1, 2m-1, ..., nm-1)``."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    return tuple(i * m - 1 for i in range(1, n + 1))


def artin_hilbert(m: int, n: int) -> IntPoly:
    """Sum of ``q^|alpha|`` over ``alpha <= staircase``, as a product of brackets."""
    out = IntPoly.const(1)
    for part in staircase(m, n):
        out = out * q_bracket(part + 1)
    return out


def artin_check(m: int, n: int) -> VerificationReport:
    lhs = artin_hilbert(m, n)
    rhs = q_mstep_factorial(m * n, m)
    return check("artin-hilbert", f"m={m} n={n}", lhs == rhs, f"{lhs} != {rhs}")


def beta_phi(T, m: int, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Column heights ``beta(T)`` and band counts ``phi(T)``.

    Columns in ``U = [n] - T`` form a staircase; a column in ``T`` lying in
    band ``i`` (between ``u_{i-1}`` and ``u_i``) gets height ``im - 2``.
    """
    T = set(T)
    if not T <= set(range(1, n + 1)):
        raise ValueError(f"T must be a subset of 1..{n}")
    k = n - len(T)
    beta: List[int] = []
    phi = [0] * (k + 1)
    seen_u = 0
    for x in range(1, n + 1):
        if x in T:
            beta.append((seen_u + 1) * m - 2)
            phi[seen_u] += 1
        else:
            seen_u += 1
            beta.append(seen_u * m - 1)
    return tuple(beta), tuple(phi)


def _subsets(n: int):
    for size in range(n + 1):
        for T in itertools.combinations(range(1, n + 1), size):
            yield frozenset(T)


def iter_super_artin(m: int, n: int) -> Iterator[Tuple[frozenset, Tuple[int, ...]]]:
    if m < 2:
        raise ValueError("super Artin sets need m >= 2")
    for T in _subsets(n):
        beta, _ = beta_phi(T, m, n)
        for alpha in itertools.product(*(range(b + 1) for b in beta)):
            yield T, alpha


def super_artin_hilbert(m: int, n: int) -> BivarPoly:
    """Sum over ``T`` of ``t^#T`` times the product of ``[beta_i + 1]``."""
    if m < 2:
        raise ValueError("super Artin sets need m >= 2")
    out = BivarPoly()
    for T in _subsets(n):
        beta, _ = beta_phi(T, m, n)
        w = IntPoly.const(1)
        for b in beta:
            w = w * q_bracket(b + 1)
        out = out + BivarPoly([IntPoly()] * len(T) + [w])
    return out


def super_artin_enumerated(m: int, n: int) -> BivarPoly:
    """Same series by listing every element; an oracle for small cases."""
    coeffs = {}
    for T, alpha in iter_super_artin(m, n):
        coeffs.setdefault(len(T), []).append(sum(alpha))
    out = []
    for j in range(n + 1):
        poly = IntPoly()
        for d in coeffs.get(j, ()):
            poly = poly + IntPoly.monomial(d)
        out.append(poly)
    return BivarPoly(out)


def ordered_super_series(m: int, n: int) -> BivarPoly:
    """``sum_k S~o[m,n,k] t^(n-k)``."""
    return BivarPoly(ordered_q_stirling(m, n, n - j, "super") for j in range(n + 1))


def super_artin_check(m: int, n: int) -> VerificationReport:
    lhs = super_artin_hilbert(m, n)
    rhs = ordered_super_series(m, n)
    params = f"m={m} n={n}"
    if lhs != rhs:
        return check("super-artin-hilbert", params, False, f"{lhs} != {rhs}")
    ends = lhs.coefficient(0) == q_mstep_factorial(n * m, m) and lhs.coefficient(n) == q_bracket(m - 1) ** n
    return check("super-artin-hilbert", params, ends, "extreme t-coefficients differ")


# ------------------------------------------------------------ bijection


def inversion_data(omega: OrderedPartition) -> Tuple[Tuple[int, ...], frozenset]:
    """``(eta, T)``: inversions led by each ``s^0`` and the bases above their block's minimum."""
    eta = inversions_by_base(omega)
    T = set()
    for blk in omega.all_blocks:
        low = 0 if ZERO in blk else minb(blk)
        for b, c in blk:
            if c == 0 and b > low:
                T.add(b)
    return eta, frozenset(T)


class _State:
    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.zero = {ZERO}
        self.orders = {}
        self.tuples: List[List[frozenset]] = []

    def freeze(self, n=None) -> OrderedPartition:
        blocks = tuple(b for tup in self.tuples for b in tup)
        return OrderedPartition(
            "super", self.m, self.n if n is None else n, frozenset(self.zero), blocks, tuple(sorted(self.orders.items()))
        )

    def copy(self) -> "_State":
        s = _State(self.m, self.n)
        s.zero = set(self.zero)
        s.orders = dict(self.orders)
        s.tuples = [list(t) for t in self.tuples]
        return s


def _placements(state: _State, k: int, new_tuple: bool):
    """Candidate states after inserting base k, in canonical order."""
    m = state.m
    if new_tuple:
        for slot in range(len(state.tuples) + 1):
            for r in range(m):
                s = state.copy()
                s.tuples.insert(slot, [frozenset([(k, (d - r) % m)]) for d in range(m)])
                yield f"new tuple at slot {slot}, {k}^0 in block {r + 1}", s
        return
    for t in range(len(state.tuples)):
        for r in range(m):
            s = state.copy()
            s.tuples[t] = [blk | {(k, (d - r) % m)} for d, blk in enumerate(s.tuples[t])]
            yield f"tuple {t + 1} block {r + 1}", s
    for c in range(1, m):
        s = state.copy()
        s.zero |= {(k, d) for d in range(m)}
        s.orders[k] = c
        yield f"zero block run from {k}^{c}", s


def insert_bijection(T, alpha: Sequence[int], m: int, n: int, trace: list = None) -> OrderedPartition:
    """Build the ordered super partition whose base ``k`` leads exactly ``alpha_k`` inversions."""
    T = frozenset(T)
    if len(alpha) != n:
        raise ValueError(f"alpha needs {n} parts")
    if m < 2:
        raise ValueError("super partitions with zero-block runs need m >= 2")
    state = _State(m, 0)
    for k in range(1, n + 1):
        hits = []
        for label, cand in _placements(state, k, new_tuple=k not in T):
            cand.n = k
            if inversions_by_base(cand.freeze())[k - 1] == alpha[k - 1]:
                hits.append((label, cand))
        if not hits:
            raise ValueError(f"no placement of base {k} gives {alpha[k - 1]} inversions (alpha exceeds beta(T))")
        if len(hits) > 1:
            raise RuntimeError(f"base {k}: {len(hits)} placements give {alpha[k - 1]} inversions")
        label, state = hits[0]
        if trace is not None:
            trace.append((k, label, str(state.freeze())))
    state.n = n
    return state.freeze()


def inverse_bijection(omega: OrderedPartition) -> Tuple[frozenset, Tuple[int, ...]]:
    """Recover ``(T, alpha)`` by deleting bases ``n, n-1, ..., 1``."""
    m = omega.m
    state = _State(m, omega.n)
    state.zero = set(omega.zero_block)
    state.orders = dict(omega.zero_orderings)
    state.tuples = [list(omega.tuple_blocks(j)) for j in range(1, omega.k + 1)]
    T = set()
    alpha = [0] * omega.n
    for k in range(omega.n, 0, -1):
        current = state.freeze(n=k)
        alpha[k - 1] = inversions_by_base(current)[k - 1]
        if (k, 0) in state.zero:
            T.add(k)
            state.zero -= {(k, d) for d in range(m)}
            del state.orders[k]
            continue
        for t, tup in enumerate(state.tuples):
            if any((k, 0) in blk for blk in tup):
                rest = [frozenset(e for e in blk if e[0] != k) for blk in tup]
                if all(rest):
                    T.add(k)
                    state.tuples[t] = rest
                else:
                    del state.tuples[t]
                break
    return frozenset(T), tuple(alpha)


def bijection_check(m: int, n: int) -> VerificationReport:
    """Round trips in both directions and agreement of ``(eta, T)`` with ``(alpha, T)``."""
    from .colored import enumerate_ordered

    params = f"m={m} n={n}"
    images = set()
    count = 0
    for T, alpha in iter_super_artin(m, n):
        omega = insert_bijection(T, alpha, m, n)
        count += 1
        if inverse_bijection(omega) != (T, tuple(alpha)):
            return check("super-artin-bijection", params, False, f"T={sorted(T)} alpha={alpha} -> {omega}")
        eta, T2 = inversion_data(omega)
        if (eta, T2) != (tuple(alpha), T):
            return check("super-artin-bijection", params, False, f"{omega}: eta={eta} T={sorted(T2)}")
        images.add(omega)
    total = 0
    for k in range(n + 1):
        for omega in enumerate_ordered(m, n, k, "super"):
            total += 1
            if omega not in images:
                return check("super-artin-bijection", params, False, f"{omega} is not hit")
    ok = total == count == len(images)
    return check("super-artin-bijection", params, ok, f"{count} pairs, {total} partitions", detail=f"{count} pairs")
