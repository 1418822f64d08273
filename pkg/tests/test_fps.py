from fractions import Fraction

import pytest
from hypothesis import given

from conftest import series, small_rationals
from zeropascal.errors import NonzeroConstantInner, ZeroConstantTerm
from zeropascal.fps import (
    ParamPolynomial,
    Series,
    fps_compose,
    fps_exp,
    fps_inv,
    fps_log,
    fps_mul,
    fps_pow,
    generalized_binomial,
    parse_rational,
)


def test_geometric_inverse():
    g = Series.geometric(8)
    assert fps_inv(g) == Series.from_coeffs([1, -1], 8)


def test_exp_log_roundtrip_known():
    e = Series.exp(6)
    assert fps_log(e) == Series.x(6)
    assert fps_exp(Series.x(6)) == e


def test_mixed_orders_align_to_minimum():
    s = Series.geometric(3) + Series.geometric(7)
    assert s.order == 3


def test_inverse_needs_unit():
    with pytest.raises(ZeroConstantTerm):
        fps_inv(Series.x(4))


def test_compose_needs_zero_constant_inner():
    with pytest.raises(NonzeroConstantInner):
        fps_compose(Series.geometric(4), Series.one(4))


def test_compose_geometric_with_x_over_1_minus_x():
    inner = fps_mul(Series.x(6), Series.geometric(6))
    # 1/(1 - x/(1-x)) = (1-x)/(1-2x)
    want = fps_mul(Series.from_coeffs([1, -1], 6), Series.geometric(6, 2))
    assert fps_compose(Series.geometric(6), inner) == want


def test_half_power_squares_back():
    a = Series.from_coeffs([1, 3, -2, 5], 7)
    r = fps_pow(a, Fraction(1, 2))
    assert fps_mul(r, r) == a


def test_generalized_binomial_values():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert generalized_binomial(-1, 3) == -1


def test_json_roundtrip_and_format():
    s = Series.from_coeffs([1, Fraction(1, 2), -3], 2)
    assert s.to_strings() == ["1", "1/2", "-3"]
    assert Series.from_json(s.to_json()) == s
    assert parse_rational("-7/21") == Fraction(-1, 3)


def test_stretch_and_compress():
    a = Series.from_coeffs([1, 2, 3], 2)
    s = a.stretch(3, 8)
    assert list(s.coeffs) == [1, 0, 0, 2, 0, 0, 3, 0, 0]
    assert s.compress(3).with_order(2) == a


def test_param_polynomial_arithmetic():
    phi = ParamPolynomial.variable()
    p = (phi + 1) ** 2
    assert p.format() == "1 + 2*phi + phi^2"
    assert p(Fraction(2)) == 9
    assert (p - 1 - 2 * phi).divide_by_variable() == phi
    assert ParamPolynomial.monomial(3, 2)(Fraction(1, 2)) == Fraction(1, 4)


@given(series(order=6), series(order=6), series(order=6))
def test_multiplication_ring_laws(a, b, c):
    assert fps_mul(a, b) == fps_mul(b, a)
    assert fps_mul(fps_mul(a, b), c) == fps_mul(a, fps_mul(b, c))
    assert fps_mul(a, b + c) == fps_mul(a, b) + fps_mul(a, c)


@given(series(order=6))
def test_inverse_is_two_sided(a):
    assert fps_mul(a, fps_inv(a)) == Series.one(6)


@given(series(order=6, unit=True))
def test_log_exp_inverse(a):
    assert fps_exp(fps_log(a)) == a


@given(series(order=5, unit=True), small_rationals, small_rationals)
def test_power_law(a, s, t):
    assert fps_mul(fps_pow(a, s), fps_pow(a, t)) == fps_pow(a, s + t)


@given(series(order=5), series(order=5, const=0), series(order=5, const=0))
def test_composition_associative(a, h, k):
    assert fps_compose(fps_compose(a, h), k) == fps_compose(a, fps_compose(h, k))


def test_hadamard_examples():
    from zeropascal.fps import fps_hadamard
    from zeropascal.riordan import block_parameter

    e = Series.exp(6)
    assert fps_hadamard(Series.geometric(6), e) == e
    assert fps_hadamard(e, e) == Series.from_function(lambda n: e[n] ** 2, 6)
    c = fps_hadamard(block_parameter(2, 2, 8).c, block_parameter(F3, 2, 8).c)
    assert c == block_parameter(2 * F3, 2, 8).c


F3 = Fraction(-3, 4)


def test_block_truncate_examples():
    from zeropascal.fps import fps_block_truncate

    assert fps_block_truncate(Series.exp(5), 3) == Series.from_coeffs([1, 1, Fraction(1, 2)], 5)
    assert fps_block_truncate(Series.geometric(4), 1) == Series.one(4)


@given(series(order=6, unit=True), small_rationals)
def test_binomial_power_matches_exp_log(a, phi):
    assert fps_pow(a, phi) == fps_exp(fps_log(a) * phi)
