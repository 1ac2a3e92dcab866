"""Valuation models of entire functions and what can be read off them.

An entire function ``f = sum a_n x^n`` enters only through ``w_n = v_p(a_n)``.
With ``t = log_p r`` the log maximum modulus is::

    M_f(t) = max_n (n t - w_n)

and the least/greatest maximizing indices ``mu <= nu`` count zeros of ``f``
in the open and closed disk of radius ``p^t`` (``nu - mu`` on the circle).
The critical log-radius between consecutive terms is
``rho_n = w_{n+1} - w_n``; since ``L_{n+1}(t) - L_n(t) = t - rho_n``,
a scan over ``n`` may stop once ``rho`` is known to stay above ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .arith import INF, ExtValuation, as_rat, check_prime, parse_ext, val_p
from .errors import DomainError, InsufficientPrefix, ZeroCoefficient, ZeroFunction
from .series import Poly


def derive_n0(N: int) -> int:
    """Least integer k with k >= (2 N^(N-1) / (N-1))^(1/(N-2)).

    Decided by exact integer comparison ``k^(N-2) (N-1) >= 2 N^(N-1)``.
    """
    if isinstance(N, bool) or not isinstance(N, int) or N < 3:
        raise DomainError(f"N must be an integer >= 3, got {N!r}")
    target = 2 * N ** (N - 1)
    hi = 1
    while hi ** (N - 2) * (N - 1) < target:
        hi *= 2
    lo = hi // 2
    # invariant: lo fails (or lo == 0), hi passes
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** (N - 2) * (N - 1) >= target:
            hi = mid
        else:
            lo = mid
    return hi


# -- models ---------------------------------------------------------------


class CoefficientModel:
    """Common interface: ``w(n)`` plus how far the data reach.

    ``known_length`` is the number of indices with known valuation (None
    when every index is known).  ``increasing_from`` is an index from which
    ``rho`` is strictly increasing for good, or None for finite models.
    """

    prime: int
    known_length: int | None = None
    increasing_from: int | None = None

    def w(self, n: int) -> ExtValuation:
        raise NotImplementedError

    def valuations(self, stop: int) -> list:
        return [self.w(n) for n in range(stop)]


@dataclass(frozen=True)
class PolyModel(CoefficientModel):
    prime: int
    poly: Poly

    def __post_init__(self):
        check_prime(self.prime)
        if not isinstance(self.poly, Poly):
            object.__setattr__(self, "poly", Poly(self.poly))

    @property
    def known_length(self):
        return len(self.poly.coeffs)

    def w(self, n):
        return val_p(self.poly.coeff(n), self.prime)


@dataclass(frozen=True)
class ListModel(CoefficientModel):
    """A finite series given only by its valuations (``inf`` for zeros)."""

    prime: int
    w_list: tuple

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "w_list", tuple(parse_ext(v) for v in self.w_list))

    @property
    def known_length(self):
        return len(self.w_list)

    def w(self, n):
        return self.w_list[n] if 0 <= n < len(self.w_list) else INF


@dataclass(frozen=True)
class TailCertificate:
    """User claim about the unseen tail: ``rho`` strictly increases from
    ``ratios_increasing_from`` on, and tends to infinity iff ``unbounded``."""

    ratios_increasing_from: int
    unbounded: bool


@dataclass(frozen=True)
class PrefixTailModel(CoefficientModel):
    prime: int
    w_list: tuple
    tail: TailCertificate

    def __post_init__(self):
        check_prime(self.prime)
        ws = tuple(parse_ext(v) for v in self.w_list)
        object.__setattr__(self, "w_list", ws)
        n0 = self.tail.ratios_increasing_from
        if not 0 <= n0 < len(ws):
            raise DomainError(f"tail start {n0} lies outside the prefix of length {len(ws)}")
        for n in range(n0, len(ws)):
            if ws[n] is INF:
                raise DomainError(f"w_{n} = inf inside the certified tail (from {n0})")
        rhos = [ws[n + 1] - ws[n] for n in range(n0, len(ws) - 1)]
        for i in range(1, len(rhos)):
            if not rhos[i] > rhos[i - 1]:
                raise DomainError(
                    f"prefix contradicts its tail certificate: rho_{n0 + i} <= rho_{n0 + i - 1}")

    @property
    def known_length(self):
        return len(self.w_list)

    @property
    def increasing_from(self):
        return self.tail.ratios_increasing_from

    def w(self, n):
        if n >= len(self.w_list):
            raise InsufficientPrefix(f"w_{n} lies beyond the known prefix (length {len(self.w_list)})")
        return self.w_list[n]


@dataclass(frozen=True)
class FamilyModel(CoefficientModel):
    """``w_n = E((n/N)^N) * v_alpha``: coefficients ``alpha^E((n/N)^N)``."""

    prime: int
    N: int
    v_alpha: Fraction

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "v_alpha", as_rat(self.v_alpha))
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 3:
            raise DomainError(f"N must be an integer >= 3, got {self.N!r}")
        if self.v_alpha <= 0:
            raise DomainError("v_alpha must be positive (|alpha| < 1)")

    @property
    def increasing_from(self):
        return derive_n0(self.N)

    def exponent(self, n: int) -> int:
        """E((n/N)^N), computed as an integer quotient."""
        return n ** self.N // self.N ** self.N

    def w(self, n):
        return self.exponent(n) * self.v_alpha


# -- basic queries ----------------------------------------------------------


def rho(model: CoefficientModel, n: int) -> Fraction:
    """Log critical radius ``w_{n+1} - w_n``."""
    a, b = model.w(n), model.w(n + 1)
    if a is INF:
        raise ZeroCoefficient(n)
    if b is INF:
        raise ZeroCoefficient(n + 1)
    return b - a


def critical_radii(model: CoefficientModel, start: int, stop: int) -> list[Fraction]:
    """``[rho_start, ..., rho_stop]`` (inclusive)."""
    return [rho(model, n) for n in range(start, stop + 1)]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple

    @property
    def slopes(self) -> list[Fraction]:
        v = self.vertices
        return [Fraction(v[i + 1][1] - v[i][1], v[i + 1][0] - v[i][0]) for i in range(len(v) - 1)]

    def indices_at(self, t) -> tuple[int, int]:
        """``(mu, nu)`` read off the polygon at log-radius ``t``.

        Between two slopes the unique vertex is returned twice; on a slope
        the endpoints of that segment.  Only meaningful beyond the last
        vertex when the polygon is complete (finite models).
        """
        t = as_rat(t)
        idx = [v[0] for v in self.vertices]
        for k, s in enumerate(self.slopes):
            if t < s:
                return idx[k], idx[k]
            if t == s:
                return idx[k], idx[k + 1]
        return idx[-1], idx[-1]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[tuple]) -> list[tuple]:
    """Lower convex hull of points sorted by abscissa; collinear points dropped."""
    hull: list = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(model: CoefficientModel, up_to: int | None = None) -> NewtonPolygon:
    length = model.known_length
    if up_to is None:
        if length is None:
            raise ValueError("up_to is required for models with infinitely many terms")
        up_to = length - 1
    elif length is not None and up_to >= length and isinstance(model, PrefixTailModel):
        raise InsufficientPrefix(f"prefix has only {length} terms")
    pts = [(n, w) for n in range(up_to + 1) if (w := model.w(n)) is not INF]
    if not pts:
        raise ZeroFunction("every valuation is infinite")
    return NewtonPolygon(tuple(lower_hull(pts)))


@dataclass(frozen=True)
class ModulusPoint:
    t: Fraction
    value: Fraction
    mu: int
    nu: int


class ZeroCounts(NamedTuple):
    in_open_disk: int
    in_closed_disk: int
    on_circle: int


def _terms(model: CoefficientModel, t: Fraction):
    # indices that can matter for the argmax at t, with their valuations
    length = model.known_length
    start = model.increasing_from
    if start is None:
        for n in range(length):
            yield n, model.w(n)
        return
    n = 0
    while True:
        if length is not None and n + 1 >= length:
            raise InsufficientPrefix(
                f"t = {t} is not below rho at the end of the prefix (length {length})")
        w = model.w(n)
        yield n, w
        if n >= start and model.w(n + 1) - w > t:
            return
        n += 1


def max_modulus_log(model: CoefficientModel, t) -> ModulusPoint:
    """Exact ``M_f(t)`` with its least and greatest maximizing indices."""
    t = as_rat(t)
    best = mu = nu = None
    for n, w in _terms(model, t):
        if w is INF:
            continue
        L = n * t - w
        if best is None or L > best:
            best, mu, nu = L, n, n
        elif L == best:
            nu = n
    if best is None:
        raise ZeroFunction("every valuation is infinite")
    return ModulusPoint(t, best, mu, nu)


def zero_counts(model: CoefficientModel, t) -> ZeroCounts:
    """Zeros (with multiplicity, over C_p) in ``|x| < p^t``, ``|x| <= p^t``, ``|x| = p^t``."""
    pt = max_modulus_log(model, t)
    return ZeroCounts(pt.mu, pt.nu, pt.nu - pt.mu)


# -- growth -------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    degree: int


@dataclass(frozen=True)
class Transcendental:
    evidence: str


@dataclass(frozen=True)
class Unknown:
    reason: str


def growth_classify(model: CoefficientModel):
    if isinstance(model, PolyModel):
        return Polynomial(model.poly.degree)
    if isinstance(model, ListModel):
        finite = [n for n, w in enumerate(model.w_list) if w is not INF]
        return Polynomial(finite[-1] if finite else -1)
    if isinstance(model, FamilyModel):
        return Transcendental("closed form: rho_n -> infinity, every coefficient nonzero")
    if isinstance(model, PrefixTailModel):
        if model.tail.unbounded:
            return Transcendental("tail certificate declares rho_n -> infinity (assumed)")
        return Unknown("tail certificate does not declare rho_n unbounded")
    return Unknown(f"unsupported model {type(model).__name__}")


@dataclass(frozen=True)
class Witness:
    """Grid point where ``M(n t + log_alpha) >= log_beta + n M(t)``."""
    t: Fraction


@dataclass(frozen=True)
class InequalityHeldOnGrid:
    points: int


def lemma33_witness(model: CoefficientModel, log_alpha, log_beta, n: int,
                    t_grid: Sequence):
    """Look for a grid point violating the polynomial-growth inequality.

    The inequality ``M(n t + log_alpha) < log_beta + n M(t)`` holding for all
    large ``t`` forces a polynomial; the first ``t`` on the grid where it
    fails is returned as a :class:`Witness`.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    la, lb = as_rat(log_alpha), as_rat(log_beta)
    grid = [as_rat(t) for t in t_grid]
    for t in grid:
        lhs = max_modulus_log(model, n * t + la).value
        rhs = lb + n * max_modulus_log(model, t).value
        if lhs >= rhs:
            return Witness(t)
    return InequalityHeldOnGrid(len(grid))


__all__ = [
    "CoefficientModel", "PolyModel", "ListModel", "PrefixTailModel", "FamilyModel",
    "TailCertificate", "NewtonPolygon", "ModulusPoint", "ZeroCounts", "Polynomial",
    "Transcendental", "Unknown", "Witness", "InequalityHeldOnGrid", "derive_n0", "rho",
    "critical_radii", "newton_polygon", "lower_hull", "max_modulus_log", "zero_counts",
    "growth_classify", "lemma33_witness",
]
