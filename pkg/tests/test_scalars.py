from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2trac.scalars import QScalar, SQRT2, SQRT5, SQRT10, DegenerateError


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(QScalar, rationals, rationals, rationals, rationals)


def test_generator_relations():
    assert SQRT2 * SQRT2 == QScalar(2)
    assert SQRT5 * SQRT5 == QScalar(5)
    assert SQRT2 * SQRT5 == SQRT10
    assert SQRT10 * SQRT10 == QScalar(10)


def test_conjugate_product():
    assert (1 + SQRT2) * (1 - SQRT2) == QScalar(-1)


def test_invert_sqrt10_against_linear_system_oracle():
    # solve (a + b r2 + c r5 + d r10) * r10 = 1 over Q^4 by hand:
    # r10*(a,b,c,d) has components (10d, 5c, 2b, a) on (1, r2, r5, r10)
    # => a = b = c = 0, d = 1/10
    oracle = QScalar(0, 0, 0, Fraction(1, 10))
    assert SQRT10.inverse() == oracle
    assert SQRT10.inverse() == SQRT10 / 10


@given(scalars)
@settings(max_examples=120)
def test_inverse_is_exact(x):
    if x.is_zero():
        with pytest.raises(DegenerateError):
            x.inverse()
    else:
        assert x * x.inverse() == QScalar(1)


@given(scalars, scalars, scalars)
@settings(max_examples=60)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x + (-x) == QScalar(0)


def test_zero_iff_all_coordinates_zero():
    assert not QScalar(0, 1, -1, 0).is_zero()
    assert QScalar(0, 0, 0, 0).is_zero()


def test_exact_sign_close_call():
    # 99/70 is a convergent of sqrt2: the difference is ~1e-4
    assert (SQRT2 - Fraction(99, 70)).sign() == -1
    assert (SQRT2 - Fraction(140, 99)).sign() == 1
    assert (SQRT2 + SQRT5 - SQRT10 - Fraction(489, 1000)).sign() < 0
    assert (SQRT2 + SQRT5 - SQRT10 - Fraction(488, 1000)).sign() > 0


def test_ordering():
    assert SQRT2 < SQRT5 < SQRT10
    assert QScalar(1) <= QScalar(1)


def test_sqrt_monomial_cases():
    assert QScalar(Fraction(9, 4)).sqrt() == QScalar(Fraction(3, 2))
    assert QScalar(2).sqrt() == SQRT2
    assert QScalar(45).sqrt() == 3 * SQRT5
    assert QScalar(40).sqrt() == 2 * SQRT10
    with pytest.raises(ValueError):
        QScalar(3).sqrt()
    with pytest.raises(ValueError):
        (-QScalar(4)).sqrt()


def test_cbrt_monomial_cases():
    assert QScalar(27).cbrt() == QScalar(3)
    assert (2 * SQRT2).cbrt() == SQRT2
    assert (5 * SQRT5).cbrt() == SQRT5
    assert (10 * SQRT10).cbrt() == SQRT10
    assert (QScalar(80) * SQRT10).cbrt() == 2 * SQRT10
    with pytest.raises(ValueError):
        (1 + SQRT2).cbrt()


def test_string_round_trip():
    x = QScalar(Fraction(-3, 7), Fraction(1, 2), 0, 4)
    assert QScalar.from_strings(x.as_strings()) == x


def test_float_reporting_tolerance():
    x = QScalar(1, 1, 1, 1)
    approx = 1 + 2 ** 0.5 + 5 ** 0.5 + 10 ** 0.5
    assert abs(float(x) - approx) < 1e-9
