"""Exact polynomials and truncated power series over Q.

A :class:`TruncatedSeries` of order ``K`` knows the coefficients of
``x^0 .. x^K`` exactly; everything above ``K`` is unknown, not zero.  The
series carries its prime so that mixing contexts is caught early.

Wronskian sign convention
-------------------------
``wronskian_n([f1, ..., fn])`` is ``det[f_j^(i-1)]`` (row ``i`` holds the
``(i-1)``-th derivatives).  For two functions this is ``f1 f2' - f1' f2``.
The binary :func:`wronskian` follows the other common convention,
``f1' f2 - f1 f2'``, so ``wronskian(f1, f2) == wronskian_n([f2, f1])``.
The quotient rule ``(f1/f2)' = wronskian(f1, f2) / f2**2`` uses the binary
form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .arith import as_rat, check_prime, format_rat
from .errors import ContextError, OrderTooLow, UncertainComposition


def _trim(coeffs: Iterable) -> tuple:
    cs = [as_rat(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Dense univariate polynomial with Fraction coefficients, lowest first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        out = cls([lead])
        for z in roots:
            out = out * cls([-as_rat(z), 1])
        return out

    @property
    def degree(self) -> int:
        """Index of the top nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"Poly([{', '.join(format_rat(c) for c in self.coeffs)}])"

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a rational or a Poly."""
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        return self(inner)

    def derivative(self) -> "Poly":
        return Poly(n * c for n, c in enumerate(self.coeffs) if n)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.coeffs[-1]
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            c = rem[-1] / lead
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= c * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(q), Poly(rem)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def rational_roots(poly: Poly) -> list[Fraction]:
    """Distinct rational roots, ascending.  The zero polynomial is rejected."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has every root")
    if poly.degree <= 0:
        return []
    if poly.degree == 1:
        return [-poly.coeffs[0] / poly.coeffs[1]]
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)],
        x,
        domain=sympy.QQ,
    )
    roots = sp.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_order`` of a power series, known exactly.

    ``truncation_sensitive`` marks results whose coefficients would change
    if the unknown tail of an input were supplied (composition with a
    polynomial that does not vanish at 0).
    """

    prime: int
    order: int
    coeffs: tuple
    truncation_sensitive: bool = field(default=False)

    def __post_init__(self):
        check_prime(self.prime)
        if self.order < 0:
            raise ValueError("order must be non-negative")
        cs = tuple(as_rat(c) for c in self.coeffs)
        if len(cs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coeffs(cls, prime: int, coeffs: Sequence, order: int | None = None, **kw):
        """Pad with zeros or truncate ``coeffs`` to ``order`` (default: len - 1)."""
        cs = [as_rat(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(prime, order, tuple(cs), **kw)

    @classmethod
    def from_poly(cls, prime: int, poly: Poly, order: int) -> "TruncatedSeries":
        return cls.from_coeffs(prime, poly.coeffs, order)

    def coeff(self, n: int) -> Fraction:
        if n > self.order:
            raise OrderTooLow(f"coefficient {n} is beyond order {self.order}")
        return self.coeffs[n] if n >= 0 else Fraction(0)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderTooLow(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.prime, order, self.coeffs[: order + 1],
                               self.truncation_sensitive)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_nonzero(self):
        """``(degree, coefficient)`` of the lowest nonzero term, or None."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n, c
        return None

    def __repr__(self):
        body = ", ".join(format_rat(c) for c in self.coeffs)
        return f"TruncatedSeries(p={self.prime}, order={self.order}, [{body}])"

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality up to the smaller of the two orders."""
        if self.prime != other.prime:
            return False
        k = min(self.order, other.order)
        return self.coeffs[: k + 1] == other.coeffs[: k + 1]

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.agrees_with(other)
        return NotImplemented

    __hash__ = None

    def _same_context(self, other: "TruncatedSeries"):
        if self.prime != other.prime:
            raise ContextError(f"series over p={self.prime} and p={other.prime}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._same_context(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.from_coeffs(self.prime, [other], self.order)
        if isinstance(other, Poly):
            return TruncatedSeries.from_poly(self.prime, other, self.order)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = min(self.order, o.order)
        return TruncatedSeries(self.prime, k,
                               tuple(a + b for a, b in zip(self.coeffs[: k + 1], o.coeffs)),
                               self.truncation_sensitive or o.truncation_sensitive)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.prime, self.order, tuple(-c for c in self.coeffs),
                               self.truncation_sensitive)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(self, other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__


def add(s1: TruncatedSeries, s2) -> TruncatedSeries:
    return s1 + s2


def scalar_mul(s: TruncatedSeries, c) -> TruncatedSeries:
    c = as_rat(c)
    return TruncatedSeries(s.prime, s.order, tuple(c * a for a in s.coeffs),
                           s.truncation_sensitive)


def mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    s1._same_context(s2)
    k = min(s1.order, s2.order)
    a, b = s1.coeffs, s2.coeffs
    out = [Fraction(0)] * (k + 1)
    for i in range(k + 1):
        ai = a[i]
        if ai:
            for j in range(k + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
    return TruncatedSeries(s1.prime, k, tuple(out),
                           s1.truncation_sensitive or s2.truncation_sensitive)


def _taylor_shift(coeffs: Sequence[Fraction], a: Fraction, b: Fraction, order: int) -> list:
    # coefficient n of f(a x + b) from the known coefficients c_n .. c_K
    K = len(coeffs) - 1
    out = []
    for n in range(order + 1):
        s = Fraction(0)
        bp = Fraction(1)
        for m in range(n, K + 1):
            if coeffs[m]:
                s += coeffs[m] * comb(m, n) * bp
            bp *= b
            if b == 0:
                break
        out.append(s * a ** n)
    return out


def compose(f: TruncatedSeries, g) -> TruncatedSeries:
    """Coefficients of ``f(g(x))``.

    ``g`` is a :class:`Poly` or a series with ``g(0) == 0``.  When ``g`` is a
    polynomial with ``g(0) != 0`` every output coefficient depends on the
    unknown tail of ``f``; the result is then ``sum_{n<=K} c_n g^n`` reduced
    mod ``x^(K+1)`` and flagged ``truncation_sensitive``.
    """
    if isinstance(g, Poly):
        sensitive = g.coeff(0) != 0
        order = f.order
        if g.degree <= 1:
            coeffs = _taylor_shift(f.coeffs, g.coeff(1), g.coeff(0), order)
            return TruncatedSeries(f.prime, order, tuple(coeffs),
                                   f.truncation_sensitive or sensitive)
        g_series = TruncatedSeries.from_poly(f.prime, g, order)
    elif isinstance(g, TruncatedSeries):
        f._same_context(g)
        if g.coeffs[0] != 0:
            raise UncertainComposition(
                "inner series has a nonzero constant term: no coefficient of "
                "f(g) is determined by a truncated f")
        sensitive = False
        order = min(f.order, g.order)
        g_series = g.truncate(order)
    else:
        raise TypeError(f"cannot compose with {type(g).__name__}")
    acc = TruncatedSeries.from_coeffs(f.prime, [f.coeffs[f.order]], order)
    for c in reversed(f.coeffs[: f.order]):
        acc = mul(acc, g_series) + c
    return TruncatedSeries(f.prime, order, acc.coeffs,
                           f.truncation_sensitive or g_series.truncation_sensitive or sensitive)


def poly_of_series(P: Poly, f: TruncatedSeries) -> TruncatedSeries:
    """``P(f(x))`` to the order of ``f``; exact since ``P`` is a polynomial."""
    acc = TruncatedSeries.from_coeffs(f.prime, [P.coeff(P.degree) if P.degree >= 0 else 0], f.order)
    for c in reversed(P.coeffs[:-1]):
        acc = mul(acc, f) + c
    return TruncatedSeries(f.prime, f.order, acc.coeffs, f.truncation_sensitive)


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    if f.order < 1:
        raise OrderTooLow("derivative needs order >= 1")
    return TruncatedSeries(f.prime, f.order - 1,
                           tuple(n * c for n, c in enumerate(f.coeffs) if n),
                           f.truncation_sensitive)


def wronskian(f1: TruncatedSeries, f2: TruncatedSeries) -> TruncatedSeries:
    """``f1' f2 - f1 f2'`` (order drops by one)."""
    f1._same_context(f2)
    return mul(derivative(f1), f2) - mul(f1, derivative(f2))


def _det(rows: list) -> TruncatedSeries:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = mul(rows[0][j], _det(minor))
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def wronskian_n(fs: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """``det[f_j^(i-1)]``, the derivative-row convention (see module docstring)."""
    n = len(fs)
    if n < 1:
        raise ValueError("need at least one series")
    p = fs[0].prime
    for f in fs:
        if f.prime != p:
            raise ContextError("all series must share a prime")
        if f.order < n - 1:
            raise OrderTooLow(f"wronskian of {n} series needs order >= {n - 1}")
    k = min(f.order for f in fs) - (n - 1)
    rows = []
    current = [f.truncate(k + n - 1) for f in fs]
    for i in range(n):
        rows.append([g.truncate(k) for g in current])
        if i < n - 1:
            current = [derivative(g) for g in current]
    return _det(rows)


@dataclass(frozen=True)
class WronskianDecision:
    """Outcome of the polynomial two-function wronskian test.

    ``kind`` is ``"ConstantNonzero"``, ``"ConstantZero"`` or ``"NonConstant"``.
    For ``ConstantZero`` the witness ``ratio`` satisfies ``f1 = ratio * f2``
    (``None`` when ``f2`` is zero).
    """

    kind: str
    wronskian: Poly
    both_affine: bool
    ratio: Fraction | None = None


def poly_case_lemma22(f1: Poly, f2: Poly) -> WronskianDecision:
    w = f1.derivative() * f2 - f1 * f2.derivative()
    affine = f1.degree <= 1 and f2.degree <= 1
    if w.is_zero():
        ratio = None
        if not f2.is_zero():
            ratio = f1.coeff(f2.degree) / f2.coeffs[-1]
        return WronskianDecision("ConstantZero", w, affine, ratio)
    if w.degree == 0:
        return WronskianDecision("ConstantNonzero", w, affine)
    return WronskianDecision("NonConstant", w, affine)


def monomials(prime: int, terms: dict, order: int) -> TruncatedSeries:
    """Series from ``{exponent: coefficient}``; exponents above ``order`` are dropped."""
    cs = [Fraction(0)] * (order + 1)
    for e, c in terms.items():
        if e <= order:
            cs[e] += as_rat(c)
    return TruncatedSeries(prime, order, tuple(cs))


__all__ = [
    "Poly", "TruncatedSeries", "WronskianDecision", "add", "mul", "scalar_mul",
    "compose", "poly_of_series", "derivative", "wronskian", "wronskian_n",
    "poly_case_lemma22", "poly_gcd", "rational_roots", "monomials",
]
