import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from padicprime.errors import DomainError, NonRationalRootOfUnity, OrderTooLow
from padicprime.permutability import (
    AffineMap, CounterexampleFound, HypothesisNotMet, OnlyIdentity, SupportSpec,
    build_commuting_pair, commute_residual, corollary34_check, find_affine_commutants,
    polynomial_commutants, verify_support_commutation,
)
from padicprime.series import Poly, TruncatedSeries, compose, monomials

ID = AffineMap(1, 0)


def S(terms, order=12, p=2):
    return monomials(p, terms, order)


def test_residual_examples():
    f = S({0: 3, 2: 1, 7: -2})
    assert commute_residual(f, ID, 12).is_zero()
    assert commute_residual(S({3: 1}), AffineMap(-1, 0), 12).is_zero()
    g = TruncatedSeries.from_poly(2, Poly([-1, 1]) ** 3 + 1, 12)
    assert commute_residual(g, AffineMap(-1, 2), 12).is_zero()
    with pytest.raises(OrderTooLow):
        commute_residual(g, ID, 13)


def test_affine_commutant_examples():
    assert find_affine_commutants(S({2: 1, 3: 1}), 12) == [ID]
    assert find_affine_commutants(S({3: 1, 5: 1}), 12) == [ID, AffineMap(-1, 0)]
    shift = Poly([-1, 1])
    g = TruncatedSeries.from_poly(2, shift ** 3 + shift ** 5 + 1, 12)
    assert find_affine_commutants(g, 12) == [ID, AffineMap(-1, 2)]
    with pytest.raises(OrderTooLow):
        find_affine_commutants(g, 2)


def test_affine_search_rejects_affine_f():
    with pytest.raises(DomainError):
        find_affine_commutants(S({1: 1}), 6)


def test_support_commutation_examples():
    assert verify_support_commutation(SupportSpec({1, 4, 7}, 3))
    assert not verify_support_commutation(SupportSpec({1, 5}, 3))
    assert verify_support_commutation(SupportSpec({4 * k + 1 for k in range(11)}, 4))


@given(st.sets(st.integers(1, 12), min_size=1, max_size=5), st.sampled_from([1, 2]))
@settings(max_examples=60)
def test_support_rule_agrees_with_residual(exponents, ord):
    f = S({e: 1 for e in exponents}, order=12)
    a = 1 if ord == 1 else -1
    exact = commute_residual(f, AffineMap(a, 0), 12).is_zero()
    assert verify_support_commutation(SupportSpec(exponents, ord)) == exact


def test_build_pair_examples():
    P, f = build_commuting_pair(2, 2, {1: 1}, 8)
    assert P == AffineMap(-1, 2)
    assert f.to_poly() == Poly([-1, 1]) ** 3 + 1
    P, f = build_commuting_pair(1, 0, {1: 5}, 8)
    assert P == ID and f.to_poly() == Poly([0, 0, 5])
    P, f = build_commuting_pair(2, 0, {1: 1, 2: 1}, 12)
    assert P == AffineMap(-1, 0) and f.to_poly() == Poly([0, 0, 0, 1, 0, 1])
    with pytest.raises(NonRationalRootOfUnity):
        build_commuting_pair(3, 0, {1: 1}, 12)
    with pytest.raises(DomainError):
        build_commuting_pair(1, 1, {1: 1}, 12)


def test_built_pairs_commute_and_perturbations_break():
    rng = random.Random(3)
    for _ in range(15):
        b = F(rng.randint(-9, 9), rng.randint(1, 5))
        coeffs = {k: F(rng.randint(-5, 5) or 1, rng.randint(1, 4)) for k in range(1, 6)}
        P, f = build_commuting_pair(2, b, coeffs, 24)
        assert commute_residual(f, P, 24).is_zero()
        if b == 0:
            continue
        n = rng.randrange(0, 25)
        cs = list(f.coeffs)
        cs[n] += 1
        assert not commute_residual(TruncatedSeries(2, 24, tuple(cs)), P, 24).is_zero()


def test_commutants_form_a_monoid():
    shift = Poly([-1, 1])
    g = TruncatedSeries.from_poly(2, shift ** 3 + shift ** 5 + 1, 14)
    found = find_affine_commutants(g, 14)
    for P in found:
        for Q in found:
            assert P.then(Q) in found


def test_polynomial_commutants_find_iterates():
    f = S({2: 1, 3: 1}, order=10)
    assert polynomial_commutants(f, 3, 10) == [Poly([0, 0, 1, 1])]
    assert polynomial_commutants(f, 2, 10) == []


def test_corollary_check():
    out = corollary34_check(S({2: 1, 3: 1}, 14), 14, degree_bound=5)
    assert isinstance(out, OnlyIdentity)
    assert out.degree_bound == 5 and out.pair == (2, 3)
    assert out.excluded == (Poly([0, 0, 1, 1]),)
    out = corollary34_check(S({2: 1, 4: 1}), 12)
    assert isinstance(out, HypothesisNotMet) and out.support == (2, 4)
    out = corollary34_check(S({3: 1, 5: 1}), 12)
    assert isinstance(out, CounterexampleFound) and out.commutant == AffineMap(-1, 0)


def test_iterate_of_affine_conjugate_is_excluded():
    f = S({2: 1, 3: 1, 5: 2}, order=12)
    assert compose(f, f).order == 12
    out = corollary34_check(f, 12, degree_bound=3)
    assert isinstance(out, OnlyIdentity)
