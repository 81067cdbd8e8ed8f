"""Exact polynomial and power-series arithmetic.

Everything here is immutable and uses Python integers / ``Fraction`` so no
overflow or rounding can occur.  ``IntPoly`` is the carrier for every
q-analogue in the package; ``BivarPoly`` adds a second variable ``t``;
``RationalSeries`` is a truncated power series in ``x`` used for the
exponential generating function checks.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPoly",
    "BivarPoly",
    "RationalSeries",
    "SeriesDomainError",
    "q_bracket",
    "q_mstep_factorial",
    "mstep_factorial",
    "q_factorial",
    "homogeneous_eval",
    "elementary_eval",
    "reverse_coefficients",
    "substitute_power",
    "series_map",
]


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Dense polynomial in ``q`` with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``q**i``; the tuple never carries
    trailing zeros, so the zero polynomial is ``()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"IntPoly coefficients must be int, got {type(a).__name__}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPoly":
        return cls([0] * degree + [c])

    @staticmethod
    def coerce(x: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __add__(self, other):
        try:
            o = IntPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        try:
            o = IntPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return IntPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            o = IntPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = IntPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                body = str(abs(a))
            else:
                mono = "q" if i == 1 else f"q^{i}"
                body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def to_json(self) -> list:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPoly":
        return cls(int(s) for s in data)


PolyLike = Union[IntPoly, int]


class BivarPoly:
    """Polynomial in ``t`` whose coefficients are ``IntPoly`` in ``q``."""

    __slots__ = ("t_coeffs",)

    def __init__(self, t_coeffs: Iterable[PolyLike] = ()):
        c = [IntPoly.coerce(p) for p in t_coeffs]
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "t_coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    @classmethod
    def t(cls) -> "BivarPoly":
        return cls((0, 1))

    @staticmethod
    def coerce(x) -> "BivarPoly":
        if isinstance(x, BivarPoly):
            return x
        return BivarPoly((IntPoly.coerce(x),))

    def coefficient(self, j: int) -> IntPoly:
        return self.t_coeffs[j] if 0 <= j < len(self.t_coeffs) else IntPoly()

    @property
    def t_degree(self) -> int:
        return len(self.t_coeffs) - 1

    def __eq__(self, other):
        try:
            o = BivarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.t_coeffs == o.t_coeffs

    def __hash__(self):
        return hash(("BivarPoly", self.t_coeffs))

    def __add__(self, other):
        o = BivarPoly.coerce(other)
        n = max(len(self.t_coeffs), len(o.t_coeffs))
        return BivarPoly(self.coefficient(j) + o.coefficient(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly(-p for p in self.t_coeffs)

    def __sub__(self, other):
        return self + (-BivarPoly.coerce(other))

    def __rsub__(self, other):
        return BivarPoly.coerce(other) - self

    def __mul__(self, other):
        o = BivarPoly.coerce(other)
        a, b = self.t_coeffs, o.t_coeffs
        if not a or not b:
            return BivarPoly()
        out = [IntPoly()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return BivarPoly(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"BivarPoly({[list(p.coeffs) for p in self.t_coeffs]!r})"

    def __str__(self):
        if not self.t_coeffs:
            return "0"
        terms = []
        for j, p in enumerate(self.t_coeffs):
            if p.is_zero():
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            terms.append(f"({p}){mono}" if mono else f"({p})")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [p.to_json() for p in self.t_coeffs]

    @classmethod
    def from_json(cls, data) -> "BivarPoly":
        return cls(IntPoly.from_json(row) for row in data)


# ---------------------------------------------------------------- q-numbers


def q_bracket(k: int) -> IntPoly:
    """``[k]_q = 1 + q + ... + q^(k-1)``; zero for ``k <= 0``."""
    if k <= 0:
        return IntPoly()
    return IntPoly([1] * k)


def q_mstep_factorial(l: int, m: int) -> IntPoly:
    """``[l][l-m][l-2m]...[r]`` with ``r`` in ``1..m``; 1 when ``l <= 0``."""
    if m < 1:
        raise ValueError("m must be positive")
    out = IntPoly.const(1)
    while l > 0:
        out = out * q_bracket(l)
        l -= m
    return out


def mstep_factorial(l: int, m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    out = 1
    while l > 0:
        out *= l
        l -= m
    return out


def q_factorial(k: int) -> IntPoly:
    return q_mstep_factorial(k, 1)


def homogeneous_eval(d: int, vals: Sequence[PolyLike]) -> IntPoly:
    """Complete homogeneous symmetric polynomial ``h_d`` at ``vals``.

    Uses ``h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)``.
    """
    if d < 0:
        return IntPoly()
    h = [IntPoly.const(1)] + [IntPoly()] * d
    for x in vals:
        x = IntPoly.coerce(x)
        for k in range(1, d + 1):
            h[k] = h[k] + x * h[k - 1]
    return h[d]


def elementary_eval(d: int, vals: Sequence[PolyLike]) -> IntPoly:
    """Elementary symmetric polynomial ``e_d`` at ``vals`` (zero if ``d > len(vals)``)."""
    if d < 0 or d > len(vals):
        return IntPoly()
    e = [IntPoly.const(1)] + [IntPoly()] * d
    for x in vals:
        x = IntPoly.coerce(x)
        for k in range(d, 0, -1):
            e[k] = e[k] + x * e[k - 1]
    return e[d]


def reverse_coefficients(p: IntPoly) -> IntPoly:
    """``q^deg(p) p(1/q)``."""
    return IntPoly(reversed(p.coeffs))


def substitute_power(p: IntPoly, m: int) -> IntPoly:
    """``p(q^m)``."""
    if m < 1:
        raise ValueError("m must be positive")
    if p.is_zero():
        return p
    out = [0] * (p.degree * m + 1)
    for i, a in enumerate(p.coeffs):
        out[i * m] = a
    return IntPoly(out)


# ------------------------------------------------------------ power series


class SeriesDomainError(ValueError):
    """A transcendental map was applied outside its formal domain."""


class RationalSeries:
    """Power series in ``x`` truncated after ``x**order`` with exact rationals."""

    __slots__ = ("order", "coeffs")
    DEFAULT_ORDER = 8

    def __init__(self, coeffs: Iterable = (), order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("order must be nonnegative")
        c = [Fraction(a) for a in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RationalSeries is immutable")

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "RationalSeries":
        return cls((0, 1), order)

    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "RationalSeries":
        return cls((c,), order)

    def _other(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            if other.order != self.order:
                raise ValueError("series truncation orders differ")
            return other
        return RationalSeries.const(Fraction(other), self.order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        o = self._other(other)
        return RationalSeries((a + b for a, b in zip(self.coeffs, o.coeffs)), self.order)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries((-a for a in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * o.coeffs[j]
        return RationalSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return RationalSeries((a / s for a in self.coeffs), self.order)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("use series_map('pow', ...) for negative exponents")
        out = RationalSeries.const(1, self.order)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        return f"RationalSeries({[str(a) for a in self.coeffs]!r}, order={self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(a) for a in self.coeffs]}


def series_map(kind: str, s: RationalSeries, r=None) -> RationalSeries:
    """Compose ``s`` with ``exp``, ``log`` or ``(.)**r`` as formal power series.

    ``exp`` needs ``s[0] == 0``; ``log`` and ``pow`` need ``s[0] == 1``.
    Coefficients come from the derivative recurrences (``f' = s' f`` and
    friends), so everything stays in ``Fraction``.
    """
    n = s.order
    c = s.coeffs
    f = [Fraction(0)] * (n + 1)
    if kind == "exp":
        if c[0] != 0:
            raise SeriesDomainError(f"exp requires constant term 0, got {c[0]}")
        f[0] = Fraction(1)
        for k in range(1, n + 1):
            f[k] = sum((j * c[j] * f[k - j] for j in range(1, k + 1)), Fraction(0)) / k
    elif kind == "log":
        if c[0] != 1:
            raise SeriesDomainError(f"log requires constant term 1, got {c[0]}")
        for k in range(1, n + 1):
            acc = k * c[k] - sum((j * f[j] * c[k - j] for j in range(1, k)), Fraction(0))
            f[k] = acc / k
    elif kind == "pow":
        if r is None:
            raise ValueError("pow requires an exponent r")
        if c[0] != 1:
            raise SeriesDomainError(f"pow requires constant term 1, got {c[0]}")
        r = Fraction(r)
        f[0] = Fraction(1)
        for k in range(1, n + 1):
            acc = r * sum((i * c[i] * f[k - i] for i in range(1, k + 1)), Fraction(0))
            acc -= sum((j * f[j] * c[k - j] for j in range(1, k)), Fraction(0))
            f[k] = acc / k
    else:
        raise ValueError(f"unknown series map {kind!r}")
    return RationalSeries(f, n)


def dumps_poly(p: Union[IntPoly, BivarPoly]) -> str:
    return json.dumps(p.to_json())
