from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2trac.laurent import CoeffFn, PLAIN, RHO_MINUS, RHO_PLUS
from g2trac.scalars import QScalar, SQRT2, DegenerateError


monomials = st.builds(
    lambda c, e: CoeffFn.monomial(QScalar(c), e),
    st.fractions(min_value=-9, max_value=9, max_denominator=6).filter(lambda f: f != 0),
    st.integers(min_value=-4, max_value=4),
)


def poly(*terms, param=PLAIN):
    return CoeffFn({e: QScalar.of(c) for e, c in terms}, param)


def test_zero_terms_never_stored():
    f = poly((0, 1), (2, Fraction(1, 2)))
    g = poly((2, Fraction(-1, 2)))
    assert set((f + g).terms) == {0}


def test_ring_ops():
    f = poly((1, 1), (0, 2))
    g = poly((-1, 3))
    assert (f * g) == poly((0, 3), (-1, 6))
    assert (f - f).is_zero()


@given(monomials, monomials)
@settings(max_examples=80)
def test_derivation_property_on_monomials(f, g):
    lhs = (f * g).d_ds()
    rhs = f.d_ds() * g + f * g.d_ds()
    assert (lhs - rhs).is_zero()


@given(monomials)
@settings(max_examples=40)
def test_d_ds_lowers_min_exponent_by_one(f):
    d = f.d_ds()
    if f.min_exp() == 0:
        assert d.is_zero()
    else:
        assert d.min_exp() == f.min_exp() - 1


def test_d_drho_in_quadratic_charts():
    # rho = s^2: d/drho (s^4) = d/drho (rho^2) = 2 rho = 2 s^2
    f = CoeffFn.monomial(QScalar(1), 4, RHO_PLUS)
    assert f.d_drho() == CoeffFn.monomial(QScalar(2), 2, RHO_PLUS)
    # rho = -s^2: rho as a function is -s^2 and d rho/d rho = 1
    r = CoeffFn.rho(RHO_MINUS)
    assert r.d_drho() == CoeffFn.one(RHO_MINUS)


def test_param_mismatch_is_rejected():
    f = CoeffFn.monomial(QScalar(1), 1, RHO_PLUS)
    g = CoeffFn.monomial(QScalar(1), 1, RHO_MINUS)
    with pytest.raises(ValueError):
        f + g
    # constants travel freely
    assert (f + CoeffFn.of(QScalar(3), RHO_MINUS)).coeff(0) == QScalar(3)


def test_substitute_rho():
    f = poly((2, 1), (1, -3), (0, 2))      # rho^2 - 3 rho + 2
    plus = f.substitute_rho(RHO_PLUS)      # s^4 - 3 s^2 + 2
    minus = f.substitute_rho(RHO_MINUS)    # s^4 + 3 s^2 + 2
    assert plus == CoeffFn({4: QScalar(1), 2: QScalar(-3), 0: QScalar(2)}, RHO_PLUS)
    assert minus == CoeffFn({4: QScalar(1), 2: QScalar(3), 0: QScalar(2)}, RHO_MINUS)


def test_monomial_inverse_and_division():
    f = CoeffFn.monomial(SQRT2, -3)
    assert (f * f.inverse()) == CoeffFn.one()
    with pytest.raises(DegenerateError):
        CoeffFn.zero().inverse()
    num = poly((2, 1), (1, 1))
    den = poly((1, 1))
    assert num / den == poly((1, 1), (0, 1))
    with pytest.raises(ValueError):
        poly((2, 1), (0, 1)) / poly((1, 1), (0, 1))


def test_exact_division_general():
    a = poly((1, 2), (0, 3))
    b = poly((2, 1), (0, -1))
    q, r = (a * b).divmod(b)
    assert r.is_zero() and q == a


def test_eval():
    f = poly((2, 1), (0, -4))
    assert f.eval(QScalar(3)) == QScalar(5)
    assert f.eval(SQRT2) == QScalar(-2)
