"""Split and merge maps on ordered colored partitions and the sign-reversing involution.

Blocks are indexed ``S_0`` (zero block) through ``S_km``.  The pivot of an
operation is a base ``M`` equal to ``maxb S_jm`` for some ``j``; the j-th
m-tuple is ``S_{(j-1)m+1} .. S_jm``.  Colors are always read modulo m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .colored import OrderedPartition, enumerate_ordered, inv, maxb
from .qpoly import IntPoly
from .report import VerificationReport, check
from .stirling import alternating_target


class NotSplittable(ValueError):
    pass


class NotMergeable(ValueError):
    pass


@dataclass(frozen=True)
class InvolutionStep:
    input: OrderedPartition
    action: str  # "split", "merge" or "fixed"
    pivot: Optional[int]
    output: OrderedPartition


class _Work:
    """Mutable copy of an ordered partition as a list of m-tuples."""

    def __init__(self, omega: OrderedPartition):
        self.flavor = omega.flavor
        self.m = omega.m
        self.n = omega.n
        self.zero = set(omega.zero_block)
        self.orders = dict(omega.zero_orderings)
        self.tuples = [list(omega.tuple_blocks(j)) for j in range(1, omega.k + 1)]

    def last_block(self, j: int):
        return frozenset(self.zero) if j == 0 else self.tuples[j - 1][-1]

    def freeze(self) -> OrderedPartition:
        blocks = tuple(b for tup in self.tuples for b in tup)
        orders = tuple(sorted(self.orders.items())) if self.flavor == "super" else ()
        return OrderedPartition(self.flavor, self.m, self.n, frozenset(self.zero), blocks, orders)


def _singleton_tuple(M: int, start: int, m: int) -> list:
    return [frozenset([(M, (start + r) % m)]) for r in range(m)]


def _pivot_index(w: _Work, M: int) -> Optional[int]:
    for j in range(len(w.tuples) + 1):
        if maxb(w.last_block(j)) == M:
            return j
    return None


def _strip(tup: list, M: int) -> Tuple[list, int]:
    """Remove base M from a tuple; returns the stripped tuple and the color of M in its first block."""
    c = next(col for b, col in tup[0] if b == M)
    return [frozenset(e for e in blk if e[0] != M) for blk in tup], c


def _split(w: _Work, M: int) -> None:
    m = w.m
    j = _pivot_index(w, M)
    if j is None:
        raise NotSplittable(f"{M} is not the maximum base of any S_jm")
    if len(w.last_block(j)) < 2:
        raise NotSplittable(f"S_{j * m} has a single element")
    if j == 0:
        w.zero -= {(M, c) for c in range(m)}
        if w.flavor == "super":
            c = w.orders.pop(M)
            w.tuples.insert(0, _singleton_tuple(M, c + 1, m))
        else:
            w.tuples.insert(0, _singleton_tuple(M, 0, m))
        return
    stripped, c = _strip(w.tuples[j - 1], M)
    w.tuples[j - 1] = stripped
    if w.flavor == "super":
        if c % m != 0:
            w.tuples.insert(j, _singleton_tuple(M, c + 1, m))
        else:
            w.tuples.insert(j - 1, _singleton_tuple(M, 1, m))
    else:
        if c % m == 1 % m:
            w.tuples.insert(j, _singleton_tuple(M, 0, m))
        else:
            w.tuples.insert(j - 1, _singleton_tuple(M, c - 1, m))


def _absorb(tup: list, M: int, start: int, m: int) -> list:
    return [blk | {(M, (start + r) % m)} for r, blk in enumerate(tup)]


def _merge_plan(w: _Work, M: int):
    """Return ``(j, side, c)`` with side ``"left"`` or ``"right"``, or raise NotMergeable."""
    m = w.m
    j = _pivot_index(w, M)
    if j is None or j == 0:
        raise NotMergeable(f"{M} is not the maximum base of a nonzero S_jm")
    if len(w.last_block(j)) != 1:
        raise NotMergeable(f"S_{j * m} is not a singleton")
    c = next(iter(w.tuples[j - 1][0]))[1]
    left_ok = M > maxb(w.last_block(j - 1))
    has_right = j < len(w.tuples)
    right_ok = has_right and M > maxb(w.last_block(j + 1))
    if w.flavor == "super":
        goes_left = c % m != 1 % m
    else:
        goes_left = c % m == 0
    if goes_left:
        if not left_ok:
            raise NotMergeable(f"color {c} needs a left merge but maxb S_{(j - 1) * m} exceeds {M}")
        if w.flavor == "super" and j == 1 and (c - 1) % m == 0:
            raise NotMergeable("a zero-block run may not start at color 0")
        return j, "left", c
    if not has_right:
        raise NotMergeable(f"color {c} needs a right merge but there is no tuple to the right")
    if not right_ok:
        raise NotMergeable(f"color {c} needs a right merge but maxb S_{(j + 1) * m} exceeds {M}")
    return j, "right", c


def _merge(w: _Work, M: int) -> None:
    m = w.m
    j, side, c = _merge_plan(w, M)
    del w.tuples[j - 1]
    if side == "left":
        if j == 1:
            w.zero |= {(M, r) for r in range(m)}
            if w.flavor == "super":
                w.orders[M] = (c - 1) % m
        else:
            start = c - 1 if w.flavor == "super" else 1
            w.tuples[j - 2] = _absorb(w.tuples[j - 2], M, start, m)
    else:
        start = 0 if w.flavor == "super" else c + 1
        w.tuples[j - 1] = _absorb(w.tuples[j - 1], M, start, m)


def split(omega: OrderedPartition, M: int) -> OrderedPartition:
    w = _Work(omega)
    _split(w, M)
    return w.freeze()


def merge(omega: OrderedPartition, M: int) -> OrderedPartition:
    w = _Work(omega)
    _merge(w, M)
    return w.freeze()


def _splittable(w: _Work, M: int) -> bool:
    j = _pivot_index(w, M)
    return j is not None and len(w.last_block(j)) >= 2


def _mergeable(w: _Work, M: int) -> bool:
    try:
        _merge_plan(w, M)
    except NotMergeable:
        return False
    return True


def iota(omega: OrderedPartition) -> InvolutionStep:
    """Split or merge at the largest eligible pivot, scanning bases n..1."""
    w = _Work(omega)
    for M in range(omega.n, 0, -1):
        if _splittable(w, M):
            return InvolutionStep(omega, "split", M, split(omega, M))
        if _mergeable(w, M):
            return InvolutionStep(omega, "merge", M, merge(omega, M))
    return InvolutionStep(omega, "fixed", None, omega)


def _statistic(omega: OrderedPartition) -> int:
    weight = 1 if omega.flavor == "super" else omega.m - 1
    return weight * (omega.n - omega.k) + inv(omega)


@dataclass
class CancellationResult:
    report: VerificationReport
    total: IntPoly
    two_cycles: int
    fixed: List[OrderedPartition]


def cancellation(m: int, n: int, flavor: str) -> CancellationResult:
    """Pair every ordered partition with its image and sum the survivors."""
    params = f"m={m} n={n} {flavor}"
    ident = f"involution-{flavor}"
    total = IntPoly.const(0)
    signed_all = IntPoly.const(0)
    fixed = []
    two = 0
    witness = ""
    inv_step = 1 if flavor == "super" else m - 1
    for k in range(n + 1):
        for omega in enumerate_ordered(m, n, k, flavor):
            sign = -1 if (n - k) % 2 else 1
            stat = _statistic(omega)
            signed_all = signed_all + IntPoly.monomial(stat, sign)
            step = iota(omega)
            if step.action == "fixed":
                fixed.append(omega)
                total = total + IntPoly.monomial(stat, sign)
                continue
            back = iota(step.output)
            if witness:
                continue
            if back.output != omega or back.pivot != step.pivot:
                witness = f"iota(iota({omega})) = {back.output}"
            elif step.output.k - omega.k != (1 if step.action == "split" else -1):
                witness = f"{step.action} at {step.pivot} on {omega} did not change k by one"
            elif _statistic(step.output) != stat:
                witness = f"{step.action} at {step.pivot} on {omega} changed the weighted statistic"
            elif step.action == "split" and inv(step.output) - inv(omega) != inv_step:
                witness = f"split at {step.pivot} on {omega} changed inv by {inv(step.output) - inv(omega)}"
            if step.action == "split":
                two += 1
    target = alternating_target(flavor, m, n)
    if not witness and total != target:
        witness = f"fixed points sum to {total}, expected {target}"
    if not witness and signed_all != total:
        witness = f"signed sum {signed_all} differs from fixed-point sum {total}"
    report = check(ident, params, not witness, witness, detail=f"two-cycles={two} fixed={len(fixed)} total={total}")
    return CancellationResult(report, total, two, fixed)


def verify_cancellation(m: int, n: int, flavor: str) -> VerificationReport:
    return cancellation(m, n, flavor).report
