"""The posets of colored partitions ordered by refinement.

``build_lattice(m, n, barred)`` gives the intersection lattice model for
G(m,p,n), p < m (plain) or G(m,m,n) (barred).  For ``m = 1`` both flags
give the classical partition lattice of ``[n]``, stored as m=1 colored
partitions whose zero block is ``{0}``.
"""

from __future__ import annotations

import os
from typing import List, Optional

from .colored import ZERO, ColoredPartition, enumerate_partitions, full_permutation_counts, refines
from .qpoly import mstep_factorial
from .report import DISCREPANCY, VerificationReport, check
from .stirling import classical_stirling2, stirling2

DEFAULT_CAP = 100_000


class LatticeTooLarge(RuntimeError):
    pass


def element_cap() -> int:
    raw = os.environ.get("CRGSTIR_MAX_ELEMENTS")
    return int(raw) if raw else DEFAULT_CAP


def mobius_from_order(leq: List[List[bool]]) -> List[int]:
    """Möbius values from the bottom element.

    Elements must be listed so that ``y < x`` implies ``index(y) < index(x)``
    and index 0 is the unique minimum.
    """
    mu: List[int] = []
    for x in range(len(leq)):
        if x == 0:
            mu.append(1)
        else:
            mu.append(-sum(mu[y] for y in range(x) if leq[y][x]))
    return mu


class PartitionLattice:
    """Ranked poset of colored partitions with a materialized order matrix."""

    def __init__(self, m: int, n: int, barred: bool, elements: List[ColoredPartition]):
        self.m = m
        self.n = n
        self.barred = barred
        self.classical = m == 1
        self.elements = elements
        self.index = {e.key(): i for i, e in enumerate(elements)}
        self.rank = [e.rank for e in elements]
        where = []
        for e in elements:
            w = {}
            for bi, blk in enumerate(e.blocks):
                for x in blk:
                    w[x] = bi
            where.append(w)
        self.leq = [[self._below(elements[i], where[j]) for j in range(len(elements))] for i in range(len(elements))]
        self._mobius: Optional[List[int]] = None

    @staticmethod
    def _below(sigma, tau_where) -> bool:
        for blk in sigma.blocks:
            it = iter(blk)
            first = tau_where[next(it)]
            if any(tau_where[x] != first for x in it):
                return False
        return True

    def __len__(self):
        return len(self.elements)

    def index_of(self, sigma: ColoredPartition) -> int:
        return self.index[sigma.key()]

    @property
    def mobius(self) -> List[int]:
        if self._mobius is None:
            self._mobius = mobius_from_order(self.leq)
        return self._mobius

    def hasse_edges(self):
        out = []
        for i in range(len(self)):
            for j in range(len(self)):
                if i != j and self.leq[i][j] and self.rank[j] == self.rank[i] + 1:
                    out.append((i, j))
        return out


def lattice_size(m: int, n: int, barred: bool) -> int:
    if m == 1:
        return sum(classical_stirling2(n, k) for k in range(n + 1))
    return sum(stirling2(m, n, k, barred) for k in range(n + 1))


def build_lattice(m: int, n: int, barred: bool = False, cap: Optional[int] = None) -> PartitionLattice:
    cap = element_cap() if cap is None else cap
    size = lattice_size(m, n, barred)
    if size > cap:
        raise LatticeTooLarge(f"lattice for m={m}, n={n} has {size} elements (cap {cap})")
    elements = []
    for k in range(n, -1, -1):
        if m == 1:
            elements.extend(s for s in enumerate_partitions(1, n, k) if s.zero_block == frozenset([ZERO]))
        else:
            elements.extend(enumerate_partitions(m, n, k, barred))
    return PartitionLattice(m, n, barred, elements)


def mobius_recursive(L: PartitionLattice, sigma: ColoredPartition) -> int:
    return L.mobius[L.index_of(sigma)]


def mobius_product(sigma: ColoredPartition) -> int:
    """Closed-form Möbius value; the barred branch is the printed formula, not ground truth."""
    m, n, k = sigma.m, sigma.n, sigma.k
    b = len(sigma.zero_block)
    prod = 1
    for tup in sigma.tuples:
        bj = len(tup[-1])
        for f in range(2, bj):
            prod *= f
    sign = -1 if (n - k) % 2 else 1
    if sigma.barred:
        return sign * (b - m - n) * mstep_factorial(b - 2 * m, m) * prod
    return sign * mstep_factorial(b - m, m) * prod


def whitney_numbers(L: PartitionLattice):
    """``(w, W)``: Möbius sums and element counts by rank ``0..n``."""
    w = [0] * (L.n + 1)
    W = [0] * (L.n + 1)
    for r, mu in zip(L.rank, L.mobius):
        w[r] += mu
        W[r] += 1
    return w, W


def stirling_from_lattice(L: PartitionLattice, k: int):
    """``(S(G,k), s(G,k)) = (W(L, n-k), w(L, n-k))``."""
    if not 0 <= k <= L.n:
        raise ValueError("need 0 <= k <= n")
    w, W = whitney_numbers(L)
    return W[L.n - k], w[L.n - k]


def full_count_check(L: PartitionLattice) -> VerificationReport:
    """``mu(sigma) = (-1)^(n-k) #{full g with underlying partition sigma}``."""
    p = L.m if (L.barred and L.m > 1) else 1
    counts = full_permutation_counts(L.m, p, L.n)
    for sigma, mu in zip(L.elements, L.mobius):
        sign = -1 if (L.n - sigma.k) % 2 else 1
        if mu != sign * counts.get(sigma.key(), 0):
            return check(
                "mobius=full-count",
                _params(L),
                False,
                f"{sigma}: mu={mu}, count={counts.get(sigma.key(), 0)}",
            )
    extra = set(counts) - set(L.index)
    if extra:
        return check("mobius=full-count", _params(L), False, f"{len(extra)} underlying partitions outside lattice")
    return check("mobius=full-count", _params(L), True)


def product_formula_check(L: PartitionLattice) -> VerificationReport:
    """Plain lattices assert the product formula; barred ones only report mismatches."""
    bad = []
    for sigma, mu in zip(L.elements, L.mobius):
        closed = mobius_product(sigma)
        if closed != mu:
            bad.append(f"{sigma}: recursive {mu}, printed formula {closed}")
    if L.barred and L.m > 1:
        if not bad:
            return check("mobius-product(barred)", _params(L), True, detail="printed formula held")
        shown = tuple(bad[:3]) + ((f"... {len(bad) - 3} more",) if len(bad) > 3 else ())
        return VerificationReport(
            "mobius-product(barred)",
            _params(L),
            DISCREPANCY,
            discrepancies=shown,
            detail=f"{len(bad)}/{len(L)} elements differ",
        )
    return check("mobius-product", _params(L), not bad, bad[0] if bad else "")


def _params(L: PartitionLattice) -> str:
    kind = "classical" if L.classical else ("barred" if L.barred else "plain")
    return f"m={L.m} n={L.n} {kind}"
