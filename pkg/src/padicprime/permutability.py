"""Polynomials commuting with a (truncated) entire function.

All checks work on a truncated representative ``f`` of order ``K``: a
residual ``f(P) - P(f)`` is computed from the same truncated ``f`` on both
sides and reduced to the requested order, so ``residual == 0`` is an exact
property of the truncated object and a necessary condition for true
commutation.

Over Q the only roots of unity are 1 and -1, so exact coefficient work is
limited to ``P = x`` and ``P = -x + b``.  Higher multiplicative orders are
decided symbolically on the support (:func:`verify_support_commutation`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Mapping

from .arith import as_rat
from .errors import DomainError, NonRationalRootOfUnity, OrderTooLow
from .series import (
    Poly,
    TruncatedSeries,
    compose,
    poly_gcd,
    poly_of_series,
    rational_roots,
)


@dataclass(frozen=True)
class AffineMap:
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "b", as_rat(self.b))
        if self.a == 0:
            raise DomainError("an affine map needs a != 0")

    def as_poly(self) -> Poly:
        return Poly([self.b, self.a])

    def then(self, other: "AffineMap") -> "AffineMap":
        """``other . self``."""
        return AffineMap(other.a * self.a, other.a * self.b + other.b)

    @property
    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0


@dataclass(frozen=True)
class SupportSpec:
    exponents: frozenset
    ord: int

    def __post_init__(self):
        object.__setattr__(self, "exponents", frozenset(self.exponents))
        if self.ord < 1:
            raise DomainError("ord must be >= 1")
        if any(e < 1 for e in self.exponents):
            raise DomainError("support exponents must be positive")


def _as_poly(P) -> Poly:
    if isinstance(P, AffineMap):
        return P.as_poly()
    if isinstance(P, Poly):
        return P
    raise TypeError(f"expected AffineMap or Poly, got {type(P).__name__}")


def commute_residual(f: TruncatedSeries, P, order: int) -> TruncatedSeries:
    """``f(P(x)) - P(f(x))`` reduced to ``order``."""
    if order > f.order:
        raise OrderTooLow(f"residual to order {order} needs f of order >= {order}")
    Pp = _as_poly(P)
    lhs = compose(f, Pp)
    rhs = poly_of_series(Pp, f)
    return (lhs - rhs).truncate(order)


def _residual_in_b(coeffs, a: Fraction, n: int) -> Poly:
    # coefficient n of f(a x + b) - a f(x) - b, as a polynomial in b
    K = len(coeffs) - 1
    an = a ** n
    out = [coeffs[m] * comb(m, n) * an for m in range(n, K + 1)]
    if not out:
        out = [Fraction(0)]
    out[0] -= a * coeffs[n] if n <= K else 0
    if n == 0:
        out += [Fraction(0)] * (2 - len(out))
        out[1] -= 1
    return Poly(out)


def find_affine_commutants(f: TruncatedSeries, order: int) -> list[AffineMap]:
    """Every ``x -> a x + b`` with ``a = +-1``, ``b`` rational, and zero residual.

    Each residual coefficient is a polynomial in ``b``; the solutions are the
    rational roots of their gcd.  The identity always appears first.
    """
    if order < 3:
        raise OrderTooLow("affine commutant search needs order >= 3")
    if f.order < order:
        raise OrderTooLow(f"f has order {f.order} < {order}")
    found = []
    for a in (Fraction(1), Fraction(-1)):
        g = None
        for n in range(order, -1, -1):
            r = _residual_in_b(f.coeffs, a, n)
            if r.is_zero():
                continue
            g = r.monic() if g is None else poly_gcd(g, r)
            if g.degree == 0:
                break
        if g is None:
            raise DomainError(f"every shift b commutes for a = {a}: f is affine to order {order}")
        for b in rational_roots(g) if g.degree > 0 else []:
            P = AffineMap(a, b)
            if commute_residual(f, P, order).is_zero():
                found.append(P)
    found.sort(key=lambda P: (not P.is_identity, -P.a, P.b))
    return found


def verify_support_commutation(spec: SupportSpec) -> bool:
    """Whether ``F(a x) = a F(x)`` for ``a`` a primitive ``ord``-th root of unity.

    ``a^e = a`` iff ``e = 1 (mod ord)``, so only the support matters.
    """
    return all((e - 1) % spec.ord == 0 for e in spec.exponents)


def build_commuting_pair(ord: int, b_shift, coeffs: Mapping[int, object], order: int,
                         prime: int = 2) -> tuple[AffineMap, TruncatedSeries]:
    """``P = a x + b`` and ``f = sum_k c_k (x + b/(a-1))^(ord k + 1) + b/(1-a)``.

    For ``ord = 1`` (``a = 1``) only ``b = 0`` is allowed and ``f`` is
    ``sum_k c_k x^(k+1)``.  All exponents must fit in ``order`` so that the
    truncated ``f`` is the exact polynomial.
    """
    if ord not in (1, 2):
        raise NonRationalRootOfUnity(
            f"no primitive {ord}-th root of unity in Q; use verify_support_commutation")
    b = as_rat(b_shift)
    a = Fraction(1) if ord == 1 else Fraction(-1)
    if ord == 1 and b != 0:
        raise DomainError("x + b with b != 0 commutes with no transcendental entire function")
    for k in coeffs:
        if k < 1:
            raise DomainError("coefficient keys must be >= 1")
        if ord * k + 1 > order:
            raise OrderTooLow(f"exponent {ord * k + 1} exceeds order {order}")
    if ord == 1:
        f = Poly()
        for k, c in coeffs.items():
            f = f + Poly([0] * (k + 1) + [as_rat(c)])
    else:
        shift = Poly([b / (a - 1), 1])
        f = Poly([b / (1 - a)])
        for k, c in coeffs.items():
            f = f + as_rat(c) * shift ** (ord * k + 1)
    P = AffineMap(a, b)
    return P, TruncatedSeries.from_poly(prime, f, order)


# -- higher-degree commutants -------------------------------------------------------


def _q(c: Fraction):
    from sympy import QQ
    return QQ(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _series_mul(a, b, order, zero):
    out = [zero] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _univariate(e, idx):
    deg = e.degree(idx)
    cs = [Fraction(0)] * (deg + 1)
    for monom, c in e.terms():
        cs[monom[idx]] += _frac(c)
    return Poly(cs)


def _free_vars(e):
    return [i for i, d in enumerate(e.degrees()) if d > 0]


def _solve(eqs, ring, gens, fixed, top):
    eqs = [e for e in eqs if e]
    if any(e.is_ground for e in eqs):
        return []
    if not eqs:
        free = [i for i in range(len(gens)) if i not in fixed]
        if free:
            raise OrderTooLow(
                f"order too low: coefficients {['p%d' % i for i in free]} are unconstrained")
        return [dict(fixed)]
    choice = None
    for e in eqs:
        fv = _free_vars(e)
        if len(fv) == 1 and (choice is None or e.degree(fv[0]) < choice[0].degree(choice[1])):
            choice = (e, fv[0])
    if choice is None:
        from sympy.polys.groebnertools import groebner
        basis = groebner(eqs, ring)
        if len(basis) == 1 and basis[0].is_ground:
            return []
        for e in basis:
            fv = _free_vars(e)
            if len(fv) == 1:
                choice = (e, fv[0])
                break
        if choice is None:
            raise OrderTooLow("order too low: the commutant equations have a positive-dimensional solution set")
        eqs = list(basis)
    e, idx = choice
    out = []
    for r in rational_roots(_univariate(e, idx)):
        if idx == top and r == 0:
            continue
        sub = [g.subs(gens[idx], _q(r)) for g in eqs]
        out.extend(_solve(sub, ring, gens, {**fixed, idx: r}, top))
    return out


def polynomial_commutants(f: TruncatedSeries, degree: int, order: int) -> list[Poly]:
    """All rational ``P`` of exact ``degree`` with ``f(P) = P(f)`` to ``order``.

    Coefficient matching: every residual coefficient is a polynomial in the
    unknown coefficients of ``P``; solved by propagation of univariate
    equations with a lex Groebner basis as fallback.
    """
    from sympy import QQ
    from sympy.polys.rings import ring

    if degree < 1:
        raise DomainError("degree must be >= 1")
    if f.order < order:
        raise OrderTooLow(f"f has order {f.order} < {order}")
    R, *gens = ring(",".join(f"p{k}" for k in range(degree + 1)), QQ)
    fc = [_q(c) for c in f.coeffs]
    zero = R.zero

    def system(p0):
        P = [R(_q(p0)) if p0 is not None else gens[0]] + gens[1:]
        P = (P + [zero] * (order + 1))[: order + 1]
        acc = [R(fc[-1])] + [zero] * order
        for c in reversed(fc[:-1]):
            acc = _series_mul(acc, P, order, zero)
            acc[0] += c
        rhs = [zero] * (order + 1)
        fk = [R.one] + [zero] * order
        fser = [R(c) for c in fc[: order + 1]]
        for k in range(degree + 1):
            P_k = R(_q(p0)) if (k == 0 and p0 is not None) else gens[k]
            for n in range(order + 1):
                rhs[n] += P_k * fk[n]
            fk = _series_mul(fk, fser, order, zero)
        return [acc[n] - rhs[n] for n in range(order + 1)]

    solutions = []
    if f.coeffs[0] == 0:
        # constant term: f(p0) = p0 involves p0 alone
        fixed_points = Poly(f.coeffs) - Poly.x()
        candidates = rational_roots(fixed_points) if not fixed_points.is_zero() else None
        if candidates is None:
            raise OrderTooLow("f(x) = x to this order: every p0 is a fixed point")
        for p0 in candidates:
            eqs = [e.subs(gens[0], _q(p0)) for e in system(p0)]
            solutions.extend(_solve(eqs, R, gens, {0: p0}, degree))
    else:
        solutions.extend(_solve(system(None), R, gens, {}, degree))
    out = []
    for sol in solutions:
        P = Poly(sol[k] for k in range(degree + 1))
        if P.degree == degree and commute_residual(f, P, order).is_zero():
            out.append(P)
    return sorted(set(out), key=lambda P: P.coeffs)


def _iterate_shadows(f: TruncatedSeries, order: int, bound: int) -> list[TruncatedSeries]:
    # truncations of f, f.f, f.f.f, ...: commutants of every f, polynomial
    # only because of the truncation
    out = [f.truncate(order)]
    cur = f
    for _ in range(bound - 1):
        cur = compose(cur, f.to_poly()) if f.coeffs[0] else compose(cur, f)
        out.append(cur.truncate(min(order, cur.order)))
    return out


@dataclass(frozen=True)
class OnlyIdentity:
    degree_bound: int
    order: int
    pair: tuple
    excluded: tuple = field(default=())


@dataclass(frozen=True)
class CounterexampleFound:
    commutant: object
    degree_bound: int
    order: int


@dataclass(frozen=True)
class HypothesisNotMet:
    reason: str
    support: tuple


def corollary34_check(f: TruncatedSeries, order: int, degree_bound: int = 5):
    """Search for non-identity polynomial commutants of ``f`` up to ``degree_bound``.

    The hypothesis is a coprime pair ``m, l >= 2`` of indices with nonzero
    coefficients.  Solutions that coincide with a truncated iterate of
    ``f`` (``f`` itself, ``f.f``, ...) are reported in ``excluded``: they
    are shadows of non-polynomial commutants of the untruncated function.
    The answer is relative to ``order`` and ``degree_bound``.
    """
    if f.order < order:
        raise OrderTooLow(f"f has order {f.order} < {order}")
    support = tuple(n for n, c in enumerate(f.coeffs[: order + 1]) if c and n >= 2)
    pair = next(((m, l) for i, m in enumerate(support) for l in support[i + 1:]
                 if gcd(m, l) == 1), None)
    if pair is None:
        return HypothesisNotMet("no coprime pair of exponents >= 2 with nonzero coefficients",
                                support)
    for P in find_affine_commutants(f, order):
        if not P.is_identity:
            return CounterexampleFound(P, degree_bound, order)
    shadows = _iterate_shadows(f, order, degree_bound)
    excluded = []
    for d in range(2, degree_bound + 1):
        for P in polynomial_commutants(f, d, order):
            ps = TruncatedSeries.from_poly(f.prime, P, order)
            if any(ps.agrees_with(s) and s.order == order for s in shadows):
                excluded.append(P)
                continue
            return CounterexampleFound(P, degree_bound, order)
    return OnlyIdentity(degree_bound, order, pair, tuple(excluded))


__all__ = [
    "AffineMap", "SupportSpec", "commute_residual", "find_affine_commutants",
    "verify_support_commutation", "build_commuting_pair", "polynomial_commutants",
    "corollary34_check", "OnlyIdentity", "CounterexampleFound", "HypothesisNotMet",
]
