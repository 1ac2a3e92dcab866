from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from padicprime.errors import ContextError, OrderTooLow, UncertainComposition
from padicprime.series import (
    Poly, TruncatedSeries, add, compose, derivative, monomials, mul,
    poly_case_lemma22, poly_gcd, rational_roots, scalar_mul, wronskian, wronskian_n,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def series(draw_coeffs, prime=5):
    return TruncatedSeries.from_coeffs(prime, draw_coeffs)


coeff_lists = st.lists(small, min_size=1, max_size=8)


def S(*cs, order=None, p=5):
    return TruncatedSeries.from_coeffs(p, cs, order)


def test_ring_examples():
    assert add(S(1, 1), S(1, -1)) == S(2, 0)
    assert mul(S(1, 1, 0), S(1, -1, 0)).coeffs == (1, 0, -1)
    assert scalar_mul(S(0, 1), 3) == S(0, 3)


def test_order_is_minimum():
    assert mul(S(1, 1, order=5), S(1, 2, order=3)).order == 3
    assert (S(1, order=2) + S(1, order=7)).order == 2


def test_mixed_primes_rejected():
    with pytest.raises(ContextError):
        S(1, p=5) + S(1, p=3)


def test_equality_up_to_shared_order():
    assert S(1, 2, 3) == S(1, 2, order=1)
    assert S(1, 2, 3) != S(1, 5, 3)


def test_compose_examples():
    x2 = S(0, 0, 1, order=4)
    shifted = compose(x2, Poly([1, 1]))
    assert shifted.coeffs[:3] == (1, 2, 1)
    assert shifted.truncation_sensitive
    K = 6
    geo = S(*[1] * (K + 1))
    assert compose(geo, Poly([0, 2])).coeffs == tuple(F(2) ** n for n in range(K + 1))
    x3 = S(0, 0, 0, 1, order=6)
    assert compose(x3, Poly([2, -1])).to_poly() == Poly([8, -12, 6, -1])


def test_compose_with_series_needs_zero_constant():
    with pytest.raises(UncertainComposition):
        compose(S(0, 1, 1), S(1, 1, 0))
    assert compose(S(0, 1, 1), S(0, 1, 0)).coeffs == (0, 1, 1)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_mul_commutative_associative(a, b, c):
    x, y, z = series(a), series(b), series(c)
    assert mul(x, y) == mul(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


@given(coeff_lists, st.lists(small, min_size=1, max_size=3), st.lists(small, min_size=1, max_size=3))
@settings(max_examples=50)
def test_compose_associative_for_polynomials(a, b, c):
    f = TruncatedSeries.from_coeffs(5, a, 7)
    g, h = Poly([0] + b), Poly([0] + c)
    assert compose(compose(f, g), h) == compose(f, g.compose(h))


@given(coeff_lists, coeff_lists, small)
def test_derivative_linear_and_leibniz(a, b, c):
    f, g = series(a + [0]), series(b + [0])
    assert derivative(f + g) == derivative(f) + derivative(g)
    assert derivative(scalar_mul(f, c)) == scalar_mul(derivative(f), c)
    assert derivative(mul(f, g)) == mul(derivative(f), g) + mul(f, derivative(g))


def test_derivative_examples():
    assert derivative(S(1, 1, 1)) == S(1, 2)
    assert derivative(S(7, order=3)).is_zero()
    assert derivative(S(0, 0, 0, 0, 0, 1)).coeffs == (0, 0, 0, 0, 5)
    with pytest.raises(OrderTooLow):
        derivative(S(3))


def test_wronskian_examples():
    assert wronskian(S(0, 1, 0), S(1, 0, 0)).coeffs == (1, 0)
    assert wronskian(S(0, 0, 1), S(1, 0, 0)).coeffs == (0, 2)
    f = S(1, 2, 3, 4)
    assert wronskian(f, f).is_zero()


@given(coeff_lists, coeff_lists)
def test_wronskian_antisymmetric(a, b):
    f, g = series(a + [0]), series(b + [0])
    assert wronskian(f, g) == -wronskian(g, f)
    assert wronskian(f, g) == wronskian_n([g, f])


def test_wronskian_n():
    assert wronskian_n([S(0, 1)]) == S(0, 1)
    w = wronskian_n([S(1, 0, 0, 0), S(0, 1, 0, 0), S(0, 0, 1, 0)])
    assert w.coeffs == (2, 0)
    with pytest.raises(OrderTooLow):
        wronskian_n([S(1, 0), S(0, 1), S(0, 1)])


def test_polynomial_wronskian_decisions():
    x = Poly.x()
    d = poly_case_lemma22(x, Poly([1]))
    assert d.kind == "ConstantNonzero" and d.both_affine
    d = poly_case_lemma22(Poly([0, 0, 2]), Poly([0, 0, 1]))
    assert d.kind == "ConstantZero" and d.ratio == 2
    d = poly_case_lemma22(Poly([0, 0, 1]), x)
    assert d.kind == "NonConstant" and d.wronskian == Poly([0, 0, 1])


@given(st.lists(small, max_size=4), st.lists(small, max_size=4))
def test_constant_nonzero_wronskian_forces_affine(a, b):
    d = poly_case_lemma22(Poly(a), Poly(b))
    if d.kind == "ConstantNonzero":
        assert Poly(a).degree <= 1 and Poly(b).degree <= 1


def test_poly_basics():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Poly().degree == -1
    assert Poly.from_roots([1, -2]) == Poly([-2, 1, 1])
    q, r = Poly([-1, 0, 1]).divmod(Poly([-1, 1]))
    assert q == Poly([1, 1]) and r.is_zero()
    assert poly_gcd(Poly.from_roots([1, 2]), Poly.from_roots([2, 3])) == Poly([-2, 1])
    assert Poly([1, 1])(Poly([0, 0, 1])) == Poly([1, 0, 1])


def test_rational_roots():
    assert rational_roots(Poly.from_roots([F(1, 2), -3, 4])) == [-3, F(1, 2), 4]
    assert rational_roots(Poly([2, 0, 1])) == []
    assert rational_roots(Poly([F(-3, 4), 2])) == [F(3, 8)]


def test_monomials():
    assert monomials(3, {2: 1, 9: 4}, 4).coeffs == (0, 0, 1, 0, 0)
