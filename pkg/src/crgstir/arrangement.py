"""Exact geometry of the reflection arrangements of G(m,p,n).

Scalars live in Q(zeta_m) = Q[x]/Phi_m(x).  Subspaces are stored as the
reduced row-echelon basis of the linear forms vanishing on them, so two
subspaces are equal exactly when their echelon matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .colored import ColoredPartition
from .lattice import LatticeTooLarge, build_lattice, element_cap, mobius_from_order

Poly = Tuple[Fraction, ...]


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _pmul(a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a: Sequence, b: Sequence) -> Poly:
    size = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (size - len(a))
    b = list(b) + [Fraction(0)] * (size - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _pdivmod(a: Sequence, b: Sequence) -> Tuple[Poly, Poly]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(_trim(a))
    quo = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / b[-1]
        quo[shift] = c
        for i, y in enumerate(b):
            rem[i + shift] -= c * y
        rem = list(_trim(rem))
    return _trim(quo), tuple(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be >= 1")
    num: Poly = (Fraction(-1),) + (Fraction(0),) * (m - 1) + (Fraction(1),)
    for d in range(1, m):
        if m % d == 0:
            num, rem = _pdivmod(num, tuple(Fraction(c) for c in cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _modulus(m: int) -> Poly:
    return tuple(Fraction(c) for c in cyclotomic_polynomial(m))


class CycloNumber:
    """Element of Q(zeta_m) as a reduced residue polynomial in zeta."""

    __slots__ = ("m", "residue")

    def __init__(self, m: int, residue=()):
        self.m = m
        self.residue = _pdivmod(tuple(Fraction(c) for c in residue), _modulus(m))[1]

    @classmethod
    def zeta_power(cls, m: int, c: int) -> "CycloNumber":
        c %= m
        return cls(m, (0,) * c + (1,))

    @classmethod
    def of(cls, m: int, value) -> "CycloNumber":
        return value if isinstance(value, CycloNumber) else cls(m, (value,))

    def __bool__(self):
        return bool(self.residue)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber(self.m, (other,))
        return isinstance(other, CycloNumber) and self.m == other.m and self.residue == other.residue

    def __hash__(self):
        return hash((self.m, self.residue))

    def __add__(self, other):
        other = CycloNumber.of(self.m, other)
        return CycloNumber(self.m, _psub(self.residue, _psub((), other.residue)))

    def __sub__(self, other):
        other = CycloNumber.of(self.m, other)
        return CycloNumber(self.m, _psub(self.residue, other.residue))

    def __neg__(self):
        return CycloNumber(self.m, _psub((), self.residue))

    def __mul__(self, other):
        other = CycloNumber.of(self.m, other)
        return CycloNumber(self.m, _pmul(self.residue, other.residue))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        # extended Euclid: track s with s * self == r (mod Phi_m)
        r0, r1 = _modulus(self.m), self.residue
        s0, s1 = (), (Fraction(1),)
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant since Phi_m is irreducible
        assert len(r0) == 1
        return CycloNumber(self.m, tuple(c / r0[0] for c in s0))

    def __truediv__(self, other):
        return self * CycloNumber.of(self.m, other).inverse()

    def key(self) -> Tuple[str, ...]:
        return tuple(str(c) for c in self.residue)

    def __str__(self):
        if not self.residue:
            return "0"
        parts = []
        for e, c in enumerate(self.residue):
            if not c:
                continue
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        return "+".join(parts).replace("+-", "-")

    __repr__ = __str__


LinearForm = Tuple[CycloNumber, ...]


def _is_zero(row: LinearForm) -> bool:
    return not any(row)


def rref(rows: Sequence[LinearForm]) -> Tuple[LinearForm, ...]:
    """Reduced row-echelon form with zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = mat[pivot_row][col].inverse()
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row])


class Subspace:
    """Common zero set of a system of linear forms, in canonical form."""

    __slots__ = ("n", "echelon")

    def __init__(self, n: int, forms: Sequence[LinearForm] = ()):
        self.n = n
        self.echelon = rref(forms)

    @property
    def codim(self) -> int:
        return len(self.echelon)

    def key(self):
        return tuple(tuple(c.key() for c in row) for row in self.echelon)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def meet(self, form: LinearForm) -> "Subspace":
        return Subspace(self.n, self.echelon + (form,))

    def contains(self, other: "Subspace") -> bool:
        """True when ``other`` is a subspace of ``self`` (so ``self <= other`` in the lattice)."""
        return Subspace(self.n, other.echelon + self.echelon).echelon == other.echelon

    def to_json(self) -> List[List[str]]:
        return [[str(c) for c in row] for row in self.echelon]

    def kernel_basis(self) -> List[Tuple[CycloNumber, ...]]:
        m = self.echelon[0][0].m if self.echelon else 1
        pivots = []
        for row in self.echelon:
            pivots.append(next(i for i, c in enumerate(row) if c))
        free = [j for j in range(self.n) if j not in pivots]
        basis = []
        for fcol in free:
            v = [CycloNumber(m)] * self.n
            v[fcol] = CycloNumber(m, (1,))
            for row, pc in zip(self.echelon, pivots):
                v[pc] = -row[fcol]
            basis.append(tuple(v))
        return basis


def _coord_form(m: int, n: int, coeffs: Dict[int, CycloNumber]) -> LinearForm:
    zero = CycloNumber(m)
    return tuple(coeffs.get(i, zero) for i in range(1, n + 1))


def reflection_hyperplanes(m: int, p: int, n: int) -> List[LinearForm]:
    """Forms X_i (when p < m) and zeta^c X_i - X_j for i < j, 0 <= c < m."""
    if m < 1 or p < 1 or m % p:
        raise ValueError(f"p={p} must divide m={m}")
    one = CycloNumber(m, (1,))
    forms = []
    if p < m:
        for i in range(1, n + 1):
            forms.append(_coord_form(m, n, {i: one}))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for c in range(m):
                forms.append(_coord_form(m, n, {i: CycloNumber.zeta_power(m, c), j: -one}))
    seen, out = set(), []
    for f in forms:
        k = Subspace(n, [f]).key()
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


class GeometricLattice:
    """Intersection lattice ordered by reverse inclusion, bottom first."""

    def __init__(self, n: int, elements: List[Subspace]):
        self.n = n
        self.elements = elements
        self.index = {s.key(): i for i, s in enumerate(elements)}
        self.rank = [s.codim for s in elements]
        self.leq = [[a.contains(b) for b in elements] for a in elements]
        self._mobius: Optional[List[int]] = None

    def __len__(self):
        return len(self.elements)

    @property
    def mobius(self) -> List[int]:
        if self._mobius is None:
            self._mobius = mobius_from_order(self.leq)
        return self._mobius

    def whitney_numbers(self):
        top = max(self.rank)
        w, W = [0] * (top + 1), [0] * (top + 1)
        for r, mu in zip(self.rank, self.mobius):
            w[r] += mu
            W[r] += 1
        return w, W


def intersection_lattice(hyperplanes: Sequence[LinearForm], cap: Optional[int] = None) -> GeometricLattice:
    if not hyperplanes:
        raise ValueError("need at least one hyperplane")
    cap = element_cap() if cap is None else cap
    n = len(hyperplanes[0])
    bottom = Subspace(n)
    found = {bottom.key(): bottom}
    work = [bottom]
    while work:
        s = work.pop()
        for h in hyperplanes:
            t = s.meet(h)
            k = t.key()
            if k not in found:
                found[k] = t
                work.append(t)
                if len(found) > cap:
                    raise LatticeTooLarge(f"intersection lattice exceeds {cap} elements")
    elements = sorted(found.values(), key=lambda s: (s.codim, s.key()))
    return GeometricLattice(n, elements)


def partition_forms(sigma: ColoredPartition, p: int) -> List[LinearForm]:
    """Linear forms cutting out the subspace associated with a colored partition."""
    m, n = sigma.m, sigma.n
    one = CycloNumber(m, (1,))
    forms = []
    zero_elems = sorted(x for x in sigma.zero_block if x[0] > 0)
    if p < m:
        for i in sorted({b for b, _ in zero_elems}):
            forms.append(_coord_form(m, n, {i: one}))
    else:
        forms.extend(_pair_forms(m, n, zero_elems, distinct_bases=True))
    for tup in sigma.tuples:
        for blk in tup:
            forms.extend(_pair_forms(m, n, sorted(blk), distinct_bases=False))
    return forms


def _pair_forms(m, n, elems, distinct_bases):
    out = []
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            (i, c), (j, d) = elems[a], elems[b]
            if i == j:
                if distinct_bases:
                    continue
                raise ValueError("a tuple block holds two colors of one base")
            out.append(_coord_form(m, n, {i: CycloNumber.zeta_power(m, d), j: -CycloNumber.zeta_power(m, c)}))
    return out


def iso_check(m: int, p: int, n: int, geom: Optional[GeometricLattice] = None):
    """Compare the colored-partition lattice with the intersection lattice.

    Returns ``(ok, certificate, witness)`` where the certificate maps each
    partition string to the echelon matrix of its image.
    """
    if geom is None:
        geom = intersection_lattice(reflection_hyperplanes(m, p, n))
    comb = build_lattice(m, n, barred=(p == m and m > 1))
    images = []
    certificate = {}
    for sigma in comb.elements:
        sub = Subspace(n, partition_forms(sigma, p))
        images.append(sub)
        certificate[str(sigma)] = sub.to_json()
    if len(comb) != len(geom):
        return False, certificate, f"sizes differ: {len(comb)} partitions, {len(geom)} subspaces"
    idx = []
    seen = {}
    for sigma, sub in zip(comb.elements, images):
        if sub.key() not in geom.index:
            return False, certificate, f"{sigma} maps outside the intersection lattice"
        if sub.key() in seen:
            return False, certificate, f"{sigma} and {seen[sub.key()]} share an image"
        seen[sub.key()] = sigma
        if sub.codim != sigma.rank:
            return False, certificate, f"{sigma}: rank {sigma.rank}, codim {sub.codim}"
        idx.append(geom.index[sub.key()])
    for a in range(len(comb)):
        for b in range(len(comb)):
            if comb.leq[a][b] != geom.leq[idx[a]][idx[b]]:
                return False, certificate, f"order differs on {comb.elements[a]} vs {comb.elements[b]}"
    return True, certificate, ""


def pseudoreflection_for(form: LinearForm, p: int):
    """Monomial matrix in G(m,p,n) whose fixed hyperplane is ``ker(form)``.

    Returned as ``(base_map, shifts)`` acting by ``y_{base_map[i]} = zeta^shift_i x_i``.
    """
    m, n = form[0].m, len(form)
    support = [i for i, c in enumerate(form) if c]
    base_map = list(range(n))
    shifts = [0] * n
    if len(support) == 1:
        shifts[support[0]] = p
    else:
        i, j = support
        ratio = -form[i] / form[j]  # kernel: x_j = ratio * x_i
        c = next(e for e in range(m) if CycloNumber.zeta_power(m, e) == ratio)
        base_map[i], base_map[j] = j, i
        shifts[i], shifts[j] = c, -c % m
    return base_map, shifts


def apply_monomial(base_map, shifts, v):
    m = v[0].m
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[base_map[i]] = CycloNumber.zeta_power(m, shifts[i]) * x
    return tuple(out)


def pseudoreflection_check(m: int, p: int, n: int) -> Tuple[bool, str]:
    """Each hyperplane is the fixed space of a non-identity element of G(m,p,n)."""
    for form in reflection_hyperplanes(m, p, n):
        base_map, shifts = pseudoreflection_for(form, p)
        if sum(shifts) % p or (base_map == list(range(n)) and not any(s % m for s in shifts)):
            return False, f"no group element for {[str(c) for c in form]}"
        for v in Subspace(n, [form]).kernel_basis():
            if apply_monomial(base_map, shifts, v) != v:
                return False, f"{[str(c) for c in form]} not fixed pointwise"
    return True, ""


ISO_CASES = (
    (2, 1, 2), (2, 1, 3), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 1, 3), (3, 3, 2),
    (3, 3, 3), (4, 1, 2), (4, 2, 2), (4, 4, 2), (1, 1, 3), (1, 1, 4),
)
