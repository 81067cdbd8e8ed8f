"""Colored set partitions, their ordered variants, and colored permutations.

A colored element ``i^c`` is the pair ``(i, c)`` with ``0 <= c < m``; the
zero vector is ``ZERO = (0, 0)``.  Blocks are ``frozenset`` objects of such
pairs.  Multiplying a block by ``zeta_m**d`` adds ``d`` to every color.

Plain partitions are always held in standard form: m-tuples sorted by their
minimum base, and block ``j`` of a tuple containing ``s^(j mod m)`` where
``s`` is that minimum base.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

ZERO = (0, 0)

Element = tuple  # (base, color); ZERO is (0, 0)
Block = frozenset


class PartitionValidationError(ValueError):
    """Raised when raw blocks do not form a colored partition.

    ``condition`` names the violated rule: ``"cover"``, ``"(i)"``, ``"(ii)"``,
    ``"(iii)"``, ``"ordering"`` or ``"(S_{i+1})"``.
    """

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition {condition}: {message}")
        self.condition = condition


# ---------------------------------------------------------------- elements


def format_element(e: Element) -> str:
    return "0" if e == ZERO else f"{e[0]}^{e[1]}"


def parse_element(tok: str, m: int) -> Element:
    tok = tok.strip()
    if tok == "0":
        return ZERO
    try:
        base, color = tok.split("^")
        b, c = int(base), int(color)
    except ValueError:
        raise ValueError(f"bad element token {tok!r}") from None
    if b < 1:
        raise ValueError(f"bad base in {tok!r}")
    return (b, c % m)


def rotate(block: Iterable[Element], d: int, m: int) -> Block:
    """``zeta_m**d * block``."""
    return frozenset(e if e == ZERO else (e[0], (e[1] + d) % m) for e in block)


def minb(block: Iterable[Element]) -> int:
    bases = [e[0] for e in block]
    return min(bases)


def maxb(block: Iterable[Element]) -> int:
    return max((e[0] for e in block), default=0)


def all_elements(m: int, n: int) -> frozenset:
    return frozenset([ZERO] + [(i, c) for i in range(1, n + 1) for c in range(m)])


def _fmt_block(block: Iterable[Element]) -> str:
    return " ".join(format_element(e) for e in sorted(block) if e != ZERO)


def _fmt_zero_runs(zero_block: Iterable[Element], orderings: dict, m: int) -> str:
    parts = ["0"]
    for b in sorted({e[0] for e in zero_block if e != ZERO}):
        c = orderings[b]
        parts.extend(f"{b}^{(c + r) % m}" for r in range(m))
    return " ".join(parts)


def _fmt_zero_plain(zero_block: Iterable[Element]) -> str:
    rest = _fmt_block(zero_block)
    return "0 " + rest if rest else "0"


def _fmt_tuples(blocks: Sequence[Block], m: int) -> str:
    out = []
    for t in range(0, len(blocks), m):
        out.append("/".join(_fmt_block(b) for b in blocks[t : t + m]))
    return "".join(" | " + s for s in out)


# ------------------------------------------------------------- partitions


@dataclass(frozen=True)
class ColoredPartition:
    """A type (m,n) colored set partition in standard form."""

    m: int
    n: int
    barred: bool
    zero_block: Block
    tuples: tuple  # tuple of m-tuples of blocks

    @property
    def k(self) -> int:
        return len(self.tuples)

    @property
    def blocks(self) -> tuple:
        """``(S_0, S_1, ..., S_km)`` in standard order."""
        return (self.zero_block,) + tuple(b for tup in self.tuples for b in tup)

    @property
    def zero_bases(self) -> tuple:
        return tuple(sorted({e[0] for e in self.zero_block if e != ZERO}))

    @property
    def rank(self) -> int:
        return self.n - self.k

    def key(self):
        return (self.zero_block, self.tuples)

    def __str__(self):
        return _fmt_zero_plain(self.zero_block) + _fmt_tuples(self.blocks[1:], self.m)

    def to_json(self) -> dict:
        return {
            "flavor": "barred" if self.barred else "plain",
            "m": self.m,
            "n": self.n,
            "blocks": [sorted(format_element(e) for e in b) for b in self.blocks],
        }


@dataclass(frozen=True)
class SuperPartition:
    """A colored partition with a cyclic order start color for each zero-block base."""

    partition: ColoredPartition
    zero_orderings: tuple  # sorted ((base, start_color), ...)

    @property
    def m(self):
        return self.partition.m

    @property
    def n(self):
        return self.partition.n

    @property
    def k(self):
        return self.partition.k

    @property
    def blocks(self):
        return self.partition.blocks

    def __str__(self):
        p = self.partition
        return _fmt_zero_runs(p.zero_block, dict(self.zero_orderings), p.m) + _fmt_tuples(
            p.blocks[1:], p.m
        )

    def to_json(self) -> dict:
        d = self.partition.to_json()
        d["flavor"] = "super"
        d["zero_orderings"] = [[b, c] for b, c in self.zero_orderings]
        return d


@dataclass(frozen=True)
class OrderedPartition:
    """A sequence ``(S_0 / S_1 / ... / S_km)`` with ``S_{i+1} = zeta S_i`` inside tuples.

    ``flavor`` is ``"super"`` (zero block carries start colors) or ``"cr"``
    (zero block unordered).
    """

    flavor: str
    m: int
    n: int
    zero_block: Block
    blocks: tuple  # S_1..S_km
    zero_orderings: tuple = field(default=())

    @property
    def k(self) -> int:
        return len(self.blocks) // self.m

    @property
    def all_blocks(self) -> tuple:
        return (self.zero_block,) + self.blocks

    def tuple_blocks(self, j: int) -> tuple:
        """Blocks of the j-th m-tuple (1-indexed)."""
        return self.blocks[(j - 1) * self.m : j * self.m]

    def __str__(self):
        if self.flavor == "super":
            z = _fmt_zero_runs(self.zero_block, dict(self.zero_orderings), self.m)
        else:
            z = _fmt_zero_plain(self.zero_block)
        return "(" + z + _fmt_tuples(self.blocks, self.m) + ")"

    def to_json(self) -> dict:
        return {
            "flavor": "ordered-" + self.flavor,
            "m": self.m,
            "n": self.n,
            "blocks": [sorted(format_element(e) for e in b) for b in self.all_blocks],
            "zero_orderings": [[b, c] for b, c in self.zero_orderings],
        }


# ----------------------------------------------------------- standardize


def _group_tuples(nonzero: list, m: int) -> list:
    remaining = set(nonzero)
    tuples = []
    for blk in sorted(nonzero, key=lambda b: sorted(b)):
        if blk not in remaining:
            continue
        bases = [e[0] for e in blk]
        if len(set(bases)) != len(bases):
            raise PartitionValidationError(
                "(ii)", f"block {{{_fmt_block(blk)}}} repeats a base, so its multiples are not distinct"
            )
        s = min(bases)
        c = next(e[1] for e in blk if e[0] == s)
        tup = []
        for r in range(1, m + 1):
            want = rotate(blk, (r - c) % m, m)
            if want not in remaining:
                raise PartitionValidationError(
                    "(ii)", f"multiple {{{_fmt_block(want)}}} of block {{{_fmt_block(blk)}}} is not a block"
                )
            tup.append(want)
        for b in tup:
            remaining.discard(b)
        tuples.append((s, tuple(tup)))
    tuples.sort(key=lambda x: x[0])
    return [t for _, t in tuples]


def standardize(blocks: Iterable[Iterable[Element]], m: int, n: int, barred: bool = False) -> ColoredPartition:
    """Validate raw blocks and return the partition in standard form."""
    blks = [frozenset(b) for b in blocks]
    if any(not b for b in blks):
        raise PartitionValidationError("cover", "empty block")
    seen = [e for b in blks for e in b]
    universe = all_elements(m, n)
    if len(seen) != len(set(seen)) or set(seen) != universe:
        raise PartitionValidationError("cover", f"blocks do not partition [{n}^{m}] plus 0")
    zeros = [b for b in blks if ZERO in b]
    zero = zeros[0]
    zb = {e[0] for e in zero if e != ZERO}
    for i in zb:
        for c in range(m):
            if (i, c) not in zero:
                raise PartitionValidationError("(i)", f"zero block has base {i} but not {i}^{c}")
    nonzero = [b for b in blks if ZERO not in b]
    tuples = _group_tuples(nonzero, m)
    if barred and len(zb) == 1 and m >= 1:
        (i,) = zb
        raise PartitionValidationError("(iii)", f"zero block is exactly 0 plus the colors of base {i}")
    return ColoredPartition(m, n, barred, zero, tuple(tuples))


def _split_text(text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts = [p.strip() for p in text.split("|")]
    zero_toks = parts[0].split()
    tuples = [[blk.split() for blk in p.split("/")] for p in parts[1:]]
    return zero_toks, tuples


def _infer_n(zero_toks, tuples, m) -> int:
    toks = list(zero_toks) + [t for tup in tuples for blk in tup for t in blk]
    return max((parse_element(t, m)[0] for t in toks), default=0)


def parse_partition(text: str, m: int, n: Optional[int] = None, barred: bool = False) -> ColoredPartition:
    """Parse ``"0 4^0 4^1 4^2 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2"``."""
    zero_toks, tuples = _split_text(text)
    if n is None:
        n = _infer_n(zero_toks, tuples, m)
    blocks = [[parse_element(t, m) for t in zero_toks]]
    for tup in tuples:
        for blk in tup:
            blocks.append([parse_element(t, m) for t in blk])
    return standardize(blocks, m, n, barred)


def _zero_runs(zero_toks, m) -> tuple:
    elems = [parse_element(t, m) for t in zero_toks]
    if not elems or elems[0] != ZERO:
        raise PartitionValidationError("ordering", "zero block must start with 0")
    orders = {}
    rest = elems[1:]
    if len(rest) % m:
        raise PartitionValidationError("ordering", "zero block runs must have length m")
    for start in range(0, len(rest), m):
        run = rest[start : start + m]
        b, c = run[0]
        expect = [(b, (c + r) % m) for r in range(m)]
        if run != expect:
            raise PartitionValidationError("ordering", f"run for base {b} is not cyclic")
        if c == 0:
            raise PartitionValidationError("ordering", f"run for base {b} may not start at color 0")
        orders[b] = c
    return tuple(sorted(orders.items()))


def parse_super(text: str, m: int, n: Optional[int] = None) -> SuperPartition:
    zero_toks, tuples = _split_text(text)
    orders = _zero_runs(zero_toks, m)
    sigma = parse_partition(text, m, n)
    return SuperPartition(sigma, orders)


def parse_ordered(text: str, m: int, flavor: str, n: Optional[int] = None) -> OrderedPartition:
    """Parse ``"(0 1^2 1^0 1^1 | 3^2/3^0/3^1 | 2^0/2^1/2^2)"`` keeping block order."""
    zero_toks, tuples = _split_text(text)
    if n is None:
        n = _infer_n(zero_toks, tuples, m)
    zero = frozenset(parse_element(t, m) for t in zero_toks)
    blocks = tuple(frozenset(parse_element(t, m) for t in blk) for tup in tuples for blk in tup)
    orders = _zero_runs(zero_toks, m) if flavor == "super" else ()
    omega = OrderedPartition(flavor, m, n, zero, blocks, orders)
    validate_ordered(omega)
    return omega


def validate_ordered(omega: OrderedPartition) -> None:
    m = omega.m
    if len(omega.blocks) % m:
        raise PartitionValidationError("(ii)", "block count is not a multiple of m")
    standardize(omega.all_blocks, m, omega.n)
    for i in range(len(omega.blocks) - 1):
        if (i + 1) % m and omega.blocks[i + 1] != rotate(omega.blocks[i], 1, m):
            raise PartitionValidationError("(S_{i+1})", f"S_{i + 2} is not zeta*S_{i + 1}")
    if omega.flavor == "super":
        zb = {e[0] for e in omega.zero_block if e != ZERO}
        orders = dict(omega.zero_orderings)
        if set(orders) != zb or any(not 1 <= c < m for c in orders.values()):
            raise PartitionValidationError("ordering", "every zero-block base needs a start color in 1..m-1")


# -------------------------------------------------------------- inversions


def _block_inversions(blocks: Sequence[Block]) -> Iterator[tuple]:
    mins = [minb(b) for b in blocks]
    for j, blk in enumerate(blocks):
        for i, c in blk:
            if c != 0 or i == 0:
                continue
            for l in range(j + 1, len(blocks)):
                if i >= mins[l]:
                    yield ((i, 0), l)


def _zero_inversions(orderings, m) -> Iterator[tuple]:
    for b, c in orderings:
        # run is b^c b^(c+1) ... ; b^0 sits at offset m-c
        for r in range(m - c + 1, m):
            yield ((b, 0), (b, (c + r) % m))


def inversion_set(p) -> frozenset:
    """Inversion pairs ``((i, 0), l)`` (block index ``l``) and super pairs ``((i, 0), (i, c))``."""
    if isinstance(p, ColoredPartition):
        return frozenset(_block_inversions(p.blocks))
    if isinstance(p, SuperPartition):
        return frozenset(_block_inversions(p.blocks)) | frozenset(_zero_inversions(p.zero_orderings, p.m))
    if isinstance(p, OrderedPartition):
        pairs = frozenset(_block_inversions(p.all_blocks))
        if p.flavor == "super":
            pairs |= frozenset(_zero_inversions(p.zero_orderings, p.m))
        return pairs
    raise TypeError(f"no inversions for {type(p).__name__}")


def inv(p) -> int:
    return len(inversion_set(p))


def inversions_by_base(p, n: Optional[int] = None) -> tuple:
    """Number of inversion pairs whose first entry is ``s^0``, for ``s = 1..n``."""
    n = p.n if n is None else n
    counts = Counter(pair[0][0] for pair in inversion_set(p))
    return tuple(counts.get(s, 0) for s in range(1, n + 1))


# ------------------------------------------------------------- enumeration


def _snapshot(m, n, barred, zero_bases, tuples) -> ColoredPartition:
    zero = frozenset([ZERO] + [(i, c) for i in zero_bases for c in range(m)])
    tups = tuple(tuple(frozenset(b) for b in tup) for tup in tuples)
    return ColoredPartition(m, n, barred, zero, tups)


def enumerate_partitions(m: int, n: int, k: int, barred: bool = False) -> Iterator[ColoredPartition]:
    """All type (m,n) partitions with ``k`` m-tuples, each exactly once.

    Bases are inserted in increasing order; base ``i`` either opens a new
    m-tuple or joins one of the current ``km+1`` blocks (ascending index).
    """
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if k < 0 or k > n:
        return
    zero_bases: list = []
    tuples: list = []

    def rec(i):
        if i > n:
            if len(tuples) == k and not (barred and len(zero_bases) == 1):
                yield _snapshot(m, n, barred, zero_bases, tuples)
            return
        remaining = n - i + 1
        if len(tuples) < k:
            tuples.append([{(i, r % m)} for r in range(1, m + 1)])
            yield from rec(i + 1)
            tuples.pop()
        if len(tuples) + remaining - 1 < k:
            return
        zero_bases.append(i)
        yield from rec(i + 1)
        zero_bases.pop()
        for tup in tuples:
            for r in range(m):
                for d in range(m):
                    tup[(r + d) % m].add((i, d))
                yield from rec(i + 1)
                for d in range(m):
                    tup[(r + d) % m].discard((i, d))

    yield from rec(1)


def enumerate_super(m: int, n: int, k: int) -> Iterator[SuperPartition]:
    for sigma in enumerate_partitions(m, n, k):
        bases = sigma.zero_bases
        for starts in itertools.product(range(1, m), repeat=len(bases)):
            yield SuperPartition(sigma, tuple(zip(bases, starts)))


def enumerate_ordered(m: int, n: int, k: int, flavor: str) -> Iterator[OrderedPartition]:
    """Ordered super / CR partitions: every order of the tuples and every leading rotation."""
    if flavor == "super":
        base = ((s.partition, s.zero_orderings) for s in enumerate_super(m, n, k))
    elif flavor == "cr":
        base = ((p, ()) for p in enumerate_partitions(m, n, k))
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    for sigma, orders in base:
        tups = sigma.tuples
        for perm in itertools.permutations(range(len(tups))):
            for rots in itertools.product(range(m), repeat=len(tups)):
                seq = []
                for t, r in zip(perm, rots):
                    tup = tups[t]
                    seq.extend(tup[r:] + tup[:r])
                yield OrderedPartition(flavor, m, n, sigma.zero_block, tuple(seq), orders)


def refines(sigma: ColoredPartition, tau: ColoredPartition) -> bool:
    """True iff every block of ``sigma`` lies inside a block of ``tau``."""
    where = {}
    for idx, blk in enumerate(tau.blocks):
        for e in blk:
            where[e] = idx
    for blk in sigma.blocks:
        it = iter(blk)
        first = where[next(it)]
        if any(where[e] != first for e in it):
            return False
    return True


# ------------------------------------------------------ colored permutations


@dataclass(frozen=True)
class ColoredPermutation:
    """Element of G(m,p,n): base ``i`` goes to ``base_map[i-1]`` gaining ``color_shift[i-1]``."""

    m: int
    p: int
    n: int
    base_map: tuple
    color_shift: tuple

    def __post_init__(self):
        if self.m % self.p:
            raise ValueError("p must divide m")
        if sorted(self.base_map) != list(range(1, self.n + 1)) or len(self.color_shift) != self.n:
            raise ValueError("malformed colored permutation")

    @classmethod
    def identity(cls, m, p, n):
        return cls(m, p, n, tuple(range(1, n + 1)), (0,) * n)

    def is_member(self) -> bool:
        return sum(self.color_shift) % self.p == 0

    def __call__(self, e: Element) -> Element:
        if e == ZERO:
            return ZERO
        i, c = e
        return (self.base_map[i - 1], (c + self.color_shift[i - 1]) % self.m)

    def matrix(self) -> list:
        """Exponents of zeta_m: entry ``[row][col]`` is the exponent or ``None`` for zero."""
        rows = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            rows[self.base_map[i] - 1][i] = self.color_shift[i] % self.m
        return rows


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple
    is_zero_cycle: tuple
    xi_exponent: tuple  # zeta_m**e is the rotation of a zero cycle; None for primitive
    full: tuple  # None for primitive cycles

    @property
    def is_full(self) -> bool:
        return all(f for f in self.full if f is not None)

    def __str__(self):
        return "".join("(" + ",".join(format_element(e) for e in cyc) + ")" for cyc in self.cycles)


def cycle_decomposition(g: ColoredPermutation) -> CycleDecomposition:
    m = g.m
    order = [ZERO] + [(i, c) for i in range(1, g.n + 1) for c in range(m)]
    seen = set()
    cycles, zflags, xis, fulls = [], [], [], []
    for start in order:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        e = g(start)
        while e != start:
            cyc.append(e)
            seen.add(e)
            e = g(e)
        cycles.append(tuple(cyc))
        if start == ZERO:
            zflags.append(True)
            xis.append(1 % m if m > 1 else 0)
            fulls.append(True)
            continue
        repeat = next((d for d in range(1, len(cyc)) if cyc[d][0] == cyc[0][0]), None)
        if repeat is None:
            zflags.append(False)
            xis.append(None)
            fulls.append(None)
        else:
            x = (cyc[repeat][1] - cyc[0][1]) % m
            zflags.append(True)
            xis.append(x)
            fulls.append(x == 1 % m)
    return CycleDecomposition(tuple(cycles), tuple(zflags), tuple(xis), tuple(fulls))


def underlying_partition(g: ColoredPermutation, barred: Optional[bool] = None) -> ColoredPartition:
    """Primitive cycles become blocks; all zero cycles merge into the zero block."""
    if barred is None:
        barred = g.p == g.m and g.m >= 2
    dec = cycle_decomposition(g)
    zero = set()
    blocks = []
    for cyc, z in zip(dec.cycles, dec.is_zero_cycle):
        if z:
            zero.update(cyc)
        else:
            blocks.append(cyc)
    return standardize([zero] + blocks, g.m, g.n, barred)


def iter_group(m: int, p: int, n: int) -> Iterator[ColoredPermutation]:
    """All elements of G(m,p,n)."""
    if m % p:
        raise ValueError("p must divide m")
    for perm in itertools.permutations(range(1, n + 1)):
        for shifts in itertools.product(range(m), repeat=n):
            if sum(shifts) % p == 0:
                yield ColoredPermutation(m, p, n, perm, shifts)


def enumerate_full(
    m: int,
    p: int,
    n: int,
    target: Optional[ColoredPartition] = None,
    k: Optional[int] = None,
) -> Iterator[ColoredPermutation]:
    """Full elements of G(m,p,n), filtered by underlying partition or tuple count."""
    if p not in (1, m):
        raise ValueError("p must be 1 or m")
    for g in iter_group(m, p, n):
        dec = cycle_decomposition(g)
        if not dec.is_full:
            continue
        if target is not None:
            if underlying_partition(g, barred=False).key() != target.key():
                continue
        if k is not None:
            primitive = sum(1 for z in dec.is_zero_cycle if not z)
            if primitive != k * m:
                continue
        yield g


def full_permutation_counts(m: int, p: int, n: int) -> Counter:
    """Map partition key -> number of full g in G(m,p,n) with that underlying partition."""
    counts: Counter = Counter()
    for g in iter_group(m, p, n):
        if cycle_decomposition(g).is_full:
            counts[underlying_partition(g, barred=False).key()] += 1
    return counts
