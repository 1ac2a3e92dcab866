"""Exact scalars: rationals, extended valuations, integer part.

Rationals are :class:`fractions.Fraction`.  Radii never appear directly;
a radius ``r`` is carried by its base-``p`` logarithm ``t`` (a rational),
which keeps every comparison exact since ``|C_p^*| = p^Q``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidPrime

Rat = Fraction


class _Infinity:
    """The valuation of zero.  Absorbs addition, exceeds every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("padicprime.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if isinstance(other, (_Infinity, int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    def __rsub__(self, other):
        raise ArithmeticError("no -inf in the extended valuation type")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        if other is self:
            return self
        raise ArithmeticError(f"inf * {other} is undefined")

    __rmul__ = __mul__


INF = _Infinity()
ExtValuation = Union[Fraction, _Infinity]
LogRadius = Fraction


def is_inf(v) -> bool:
    return v is INF


@lru_cache(maxsize=256)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def check_prime(p) -> int:
    """Return ``p`` as an int, or raise :class:`InvalidPrime`."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise InvalidPrime(f"prime must be an integer, got {p!r}")
    if not _is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    return p


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def val_p(q, p: int) -> ExtValuation:
    """Exponent of ``p`` in ``q``; ``INF`` for zero.

    >>> val_p(Fraction(50, 3), 5)
    Fraction(2, 1)
    >>> val_p(Fraction(-6, 25), 5)
    Fraction(-2, 1)
    """
    check_prime(p)
    q = as_rat(q)
    if q == 0:
        return INF
    return Fraction(_int_valuation(q.numerator, p) - _int_valuation(q.denominator, p))


def floor_int(x) -> int:
    """Integer part E(x): the unique integer with E(x) <= x < E(x) + 1."""
    return math.floor(as_rat(x))


def parse_rat(s: str) -> Fraction:
    if not isinstance(s, str):
        return as_rat(s)
    text = s.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed rational {s!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(n, d)
    try:
        return Fraction(int(text))
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None


def format_rat(q) -> str:
    q = as_rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_ext(s) -> ExtValuation:
    if s is INF:
        return INF
    if isinstance(s, str) and s.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return parse_rat(s) if isinstance(s, str) else as_rat(s)


def format_ext(v) -> str:
    return "inf" if v is INF else format_rat(v)
