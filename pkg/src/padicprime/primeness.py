"""Certifying primeness properties from valuation data.

Sufficient conditions are discharged mechanically and every certificate
carries the weakest evidence level among the hypotheses it rests on:

* ``PROVED``  established analytically for a closed-form model,
* ``WINDOW``  verified exactly on a finite range of indices or radii,
* ``ASSUMED`` declared by the user.

Rule identifiers
----------------
========================  ===================================================
``increasing-ratio``      entire, rho strictly increasing and unbounded
                          => pseudo-prime (and finitely many multiple zeros
                          of f - beta for every beta)
``simple-poles-zeros``    poles simple but finitely many, f - beta has
                          finitely many multiple zeros => pseudo-prime
``entire-finite-mult``    entire + finitely many multiple zeros => pseudo-prime
``entire-left-prime``     entire + finitely many multiple zeros => left-prime
``entire-one-mult``       entire + at most one multiple zero per beta => prime
``finite-poles-right``    finitely many poles + finitely many multiple zeros
                          => right-prime
``ratio-over-poly``       increasing-ratio numerator over a polynomial
                          => pseudo-prime
``dominated-quotient``    both parts increasing-ratio and |f|/|g| -> infinity
                          => pseudo-prime
========================  ===================================================
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import INF, ExtValuation, as_rat, format_rat, parse_ext
from .errors import DomainError, InsufficientPrefix, NotTranscendental, ZeroCoefficient
from .polygon import (
    CoefficientModel,
    FamilyModel,
    ListModel,
    PolyModel,
    PrefixTailModel,
    Polynomial,
    Transcendental,
    derive_n0,
    growth_classify,
    max_modulus_log,
    rho,
)
from .series import Poly


class Evidence(enum.IntEnum):
    ASSUMED = 0
    WINDOW = 1
    PROVED = 2

    def __str__(self):
        return self.name.capitalize()


class Kind(str, enum.Enum):
    POLES_SIMPLE = "PolesSimpleExceptFinitely"
    MULT_ZEROS_FINITE = "MultipleZerosFiniteForEveryBeta"
    AT_MOST_ONE_MULT = "AtMostOneMultipleZeroPerBeta"
    FINITE_POLES = "FinitelyManyPoles"
    RATIO = "RatioCondition"
    DOMINATES = "Dominates"

    def __str__(self):
        return self.value


class Verdict(str, enum.Enum):
    PSEUDO_PRIME = "PseudoPrime"
    LEFT_PRIME = "LeftPrime"
    RIGHT_PRIME = "RightPrime"
    PRIME = "Prime"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Hypothesis:
    """A hypothesis about ``target`` (``subject``, ``numerator``, ``denominator``)."""

    kind: Kind
    evidence: Evidence
    target: str = "subject"
    data: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    rule: str
    hypotheses: tuple
    evidence: Evidence

    @classmethod
    def build(cls, verdict: Verdict, rule: str, hyps: Sequence[Hypothesis]) -> "Certificate":
        return cls(verdict, rule, tuple(hyps), min(h.evidence for h in hyps))


@dataclass(frozen=True)
class MeromorphicModel:
    """``numerator / denominator``; the two parts are declared coprime."""

    numerator: CoefficientModel
    denominator: CoefficientModel = None

    def __post_init__(self):
        if self.denominator is None:
            object.__setattr__(self, "denominator", PolyModel(self.numerator.prime, Poly([1])))
        if self.numerator.prime != self.denominator.prime:
            raise DomainError("numerator and denominator use different primes")
        g = growth_classify(self.denominator)
        if isinstance(g, Polynomial) and g.degree < 0:
            raise DomainError("denominator is the zero function")

    @property
    def prime(self):
        return self.numerator.prime

    @property
    def is_entire(self) -> bool:
        g = growth_classify(self.denominator)
        return isinstance(g, Polynomial) and g.degree == 0


# -- ratio condition ---------------------------------------------------------


def _normalize_n0(model: CoefficientModel, n0: int, last: int | None = None) -> int | None:
    # raise n0 until rho_{n0} exceeds every earlier defined rho; None if that
    # does not happen by `last`
    earlier = []
    for k in range(n0):
        try:
            earlier.append(rho(model, k))
        except ZeroCoefficient:
            pass
    n = n0
    top = max(earlier) if earlier else None
    while top is not None and not rho(model, n) > top:
        top = max(top, rho(model, n))
        n += 1
        if last is not None and n > last:
            return None
    return n


def check_ratio_condition(model: CoefficientModel, scan_to: int = 1000) -> Hypothesis | None:
    """Strictly increasing (and unbounded) ``|a_n / a_{n+1}|`` from some ``n0``.

    Returns ``None`` when the condition fails.  ``data`` holds ``n0`` (start
    of strict increase), ``normalized_n0`` (raised so that ``rho_n0`` beats
    every earlier ratio) and the verified index range.
    """
    if isinstance(model, FamilyModel):
        n0 = derive_n0(model.N)
        prev = rho(model, n0)
        for n in range(n0 + 1, scan_to + 1):
            cur = rho(model, n)
            if not cur > prev:
                return None
            prev = cur
        return Hypothesis(Kind.RATIO, Evidence.PROVED, "subject", {
            "n0": n0, "normalized_n0": _normalize_n0(model, n0),
            "verified": [n0, scan_to], "unbounded": "proved",
        })

    if isinstance(model, PolyModel):
        model = ListModel(model.prime, tuple(model.valuations(model.known_length)))
    if not isinstance(model, (ListModel, PrefixTailModel)):
        raise TypeError(f"unsupported model {type(model).__name__}")
    if isinstance(model, PrefixTailModel) and not model.tail.unbounded:
        return None

    last = min(scan_to, model.known_length - 2)
    if last < 1:
        return None
    ws = model.valuations(last + 2)
    n0 = last
    while n0 > 0:
        a, b, c = ws[n0 - 1], ws[n0], ws[n0 + 1]
        if a is INF or b is INF or c is INF or not (c - b) > (b - a):
            break
        n0 -= 1
    if n0 >= last:
        return None
    normalized = _normalize_n0(model, n0, last)
    if normalized is None:
        return None
    unbounded = "assumed" if isinstance(model, PrefixTailModel) else "unverified"
    return Hypothesis(Kind.RATIO, Evidence.WINDOW, "subject", {
        "n0": n0, "normalized_n0": normalized,
        "verified": [n0, last], "unbounded": unbounded,
    })


# -- closed-form families ---------------------------------------------------------


def build_prop214_family(N: int, v_alpha, v_beta, prime: int = 2):
    """The pair ``sum alpha^E((n/N)^N) x^n`` and the same with ``beta``.

    Requires ``|beta| < |alpha| < 1``, i.e. ``0 < v_alpha < v_beta``.
    """
    va, vb = as_rat(v_alpha), as_rat(v_beta)
    if not (0 < va < vb):
        raise DomainError(
            f"need |beta| < |alpha| < 1, i.e. 0 < v_alpha < v_beta; got {va}, {vb}")
    return FamilyModel(prime, N, va), FamilyModel(prime, N, vb)


def second_difference(N: int, n: int) -> Fraction:
    """``[((n+2)/N)^N - ((n+1)/N)^N] - [((n+1)/N)^N - (n/N)^N]``, exactly."""
    return Fraction((n + 2) ** N - 2 * (n + 1) ** N + n ** N, N ** N)


def second_difference_bound(N: int, n: int) -> Fraction:
    """The lower bound ``n^(N-2) (N-1) / N^(N-1)`` for :func:`second_difference`."""
    return Fraction(n ** (N - 2) * (N - 1), N ** (N - 1))


# -- dominance ----------------------------------------------------------------


def _diffs_increasing(f, g, grid) -> bool:
    diffs = [max_modulus_log(f, t).value - max_modulus_log(g, t).value for t in grid]
    return all(b > a for a, b in zip(diffs, diffs[1:]))


def check_dominates(f: CoefficientModel, g: CoefficientModel,
                    t_grid: Iterable | None = None) -> Hypothesis | None:
    """``|f|(r) / |g|(r) -> infinity``, i.e. ``M_f - M_g -> infinity``.

    Two families with the same ``N`` are decided analytically (``f``
    dominates iff ``v_alpha(f) < v_alpha(g)``) and re-checked on the grid;
    anything else gets a :data:`Evidence.WINDOW` answer at best.
    """
    grid = [as_rat(t) for t in (t_grid if t_grid is not None else range(1, 51))]
    if isinstance(f, FamilyModel) and isinstance(g, FamilyModel) and f.N == g.N:
        if not f.v_alpha < g.v_alpha:
            return None
        if not _diffs_increasing(f, g, grid):
            return None
        return Hypothesis(Kind.DOMINATES, Evidence.PROVED, "subject",
                          {"argument": "valuation gap", "grid": [str(grid[0]), str(grid[-1])]})
    if len(grid) < 2 or not _diffs_increasing(f, g, grid):
        return None
    return Hypothesis(Kind.DOMINATES, Evidence.WINDOW, "subject",
                      {"grid": [format_rat(grid[0]), format_rat(grid[-1])], "points": len(grid)})


# -- localization of multiple zeros -----------------------------------------------


def multiple_zero_localization(f: CoefficientModel, v_beta: ExtValuation, n0: int) -> Fraction:
    """A log-radius beyond which every zero of ``f - beta`` is simple.

    Returns ``max(rho_n0, t*)`` where ``t*`` is the least ``t`` with
    ``max_{n>=1} (n t - w_n) >= c``, ``c = -min(w_0, v_beta)`` bounding the log
    size of the constant term of ``f - beta``.  For ``t`` beyond the result
    the non-constant part strictly dominates.  When both ``a_0`` and
    ``beta`` vanish, ``t*`` is ``-infinity``.
    """
    v_beta = parse_ext(v_beta)
    base = rho(f, n0)
    floor0 = min(f.w(0), v_beta)
    if floor0 is INF:
        return base
    c = -floor0
    # t* = min over n >= 1 of (c + w_n) / n; h_{n+1} > h_n iff rho_n > h_n,
    # and once that holds inside the increasing region it holds forever
    start = f.increasing_from
    best = None
    n = 1
    length = f.known_length
    while True:
        if length is not None and n >= length:
            if start is None:
                break
            raise InsufficientPrefix("prefix too short to locate t*")
        w = f.w(n)
        if w is not INF:
            h = (c + w) / n
            if best is None or h < best:
                best = h
            if start is not None and n >= max(start, 1):
                if length is not None and n + 1 >= length:
                    raise InsufficientPrefix("prefix too short to locate t*")
                if f.w(n + 1) - w > h:
                    break
        n += 1
    if best is None:
        raise ZeroCoefficient(1, "f - beta is constant: no non-constant terms")
    return max(base, best)


# -- rule engine ------------------------------------------------------------------


def _strongest(hyps: Iterable[Hypothesis]) -> Hypothesis | None:
    best = None
    for h in hyps:
        if best is None or h.evidence > best.evidence:
            best = h
    return best


def rule_engine(subject: MeromorphicModel, hypotheses: Sequence[Hypothesis]) -> list[Certificate]:
    """Fire every applicable sufficient condition; one certificate per verdict.

    When several rules give the same verdict the one with the strongest
    evidence is kept (earliest in firing order on ties).
    """
    num_g = growth_classify(subject.numerator)
    den_g = growth_classify(subject.denominator)
    if not (isinstance(num_g, Transcendental) or isinstance(den_g, Transcendental)):
        raise NotTranscendental(
            f"cannot establish transcendence (numerator: {type(num_g).__name__}, "
            f"denominator: {type(den_g).__name__})")
    entire = subject.is_entire
    poly_den = (isinstance(subject.denominator, PolyModel)
                and subject.denominator.poly.degree >= 1)

    def pick(kind, targets):
        return _strongest(h for h in hypotheses if h.kind == kind and h.target in targets)

    num_targets = ("numerator", "subject") if entire else ("numerator",)
    ratio_num = pick(Kind.RATIO, num_targets)
    ratio_den = pick(Kind.RATIO, ("denominator",))
    subj = {k: pick(k, ("subject",)) for k in Kind if k not in (Kind.RATIO,)}

    fired: list[Certificate] = []
    if entire and ratio_num is not None:
        fired.append(Certificate.build(Verdict.PSEUDO_PRIME, "increasing-ratio", [ratio_num]))
        derived = Hypothesis(Kind.MULT_ZEROS_FINITE, ratio_num.evidence, "subject",
                             {"derived_from": Kind.RATIO.value})
        subj[Kind.MULT_ZEROS_FINITE] = _strongest(
            h for h in (subj[Kind.MULT_ZEROS_FINITE], derived) if h is not None)
    if poly_den:
        derived = Hypothesis(Kind.FINITE_POLES, Evidence.PROVED, "subject",
                             {"derived_from": "polynomial denominator"})
        subj[Kind.FINITE_POLES] = _strongest(
            h for h in (subj[Kind.FINITE_POLES], derived) if h is not None)

    mzf = subj[Kind.MULT_ZEROS_FINITE]
    if subj[Kind.POLES_SIMPLE] is not None and mzf is not None:
        fired.append(Certificate.build(Verdict.PSEUDO_PRIME, "simple-poles-zeros",
                                       [subj[Kind.POLES_SIMPLE], mzf]))
    if entire and mzf is not None:
        fired.append(Certificate.build(Verdict.PSEUDO_PRIME, "entire-finite-mult", [mzf]))
        fired.append(Certificate.build(Verdict.LEFT_PRIME, "entire-left-prime", [mzf]))
    if entire and subj[Kind.AT_MOST_ONE_MULT] is not None:
        fired.append(Certificate.build(Verdict.PRIME, "entire-one-mult",
                                       [subj[Kind.AT_MOST_ONE_MULT]]))
    if subj[Kind.FINITE_POLES] is not None and mzf is not None:
        fired.append(Certificate.build(Verdict.RIGHT_PRIME, "finite-poles-right",
                                       [subj[Kind.FINITE_POLES], mzf]))
    if poly_den and ratio_num is not None:
        fired.append(Certificate.build(Verdict.PSEUDO_PRIME, "ratio-over-poly",
                                       [ratio_num, subj[Kind.FINITE_POLES]]))
    if ratio_num is not None and ratio_den is not None and subj[Kind.DOMINATES] is not None:
        fired.append(Certificate.build(Verdict.PSEUDO_PRIME, "dominated-quotient",
                                       [ratio_num, ratio_den, subj[Kind.DOMINATES]]))

    kept: dict = {}
    for cert in fired:
        cur = kept.get(cert.verdict)
        if cur is None or cert.evidence > cur.evidence:
            kept[cert.verdict] = cert
    return list(kept.values())


def retarget(h: Hypothesis, target: str) -> Hypothesis:
    return Hypothesis(h.kind, h.evidence, target, h.data)


__all__ = [
    "Evidence", "Kind", "Verdict", "Hypothesis", "Certificate", "MeromorphicModel",
    "check_ratio_condition", "derive_n0", "build_prop214_family", "second_difference",
    "second_difference_bound", "check_dominates", "multiple_zero_localization",
    "rule_engine", "retarget",
]
