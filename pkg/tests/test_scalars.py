"""Field axioms and parsing round-trips for exact Gaussian rationals."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkdirac.scalars import Scalar, ZERO, ONE, I, sc


rationals = st.fractions(
    min_value=-6, max_value=6, max_denominator=8
)
scalars = st.builds(Scalar, rationals, rationals)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@given(scalars)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == ONE
        assert ONE / a == a.inverse()


@given(scalars, scalars)
def test_conj_is_ring_hom(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


def test_i_squared():
    assert I * I == Scalar(-1)


@given(scalars)
def test_render_parse_roundtrip(a):
    assert Scalar.parse(a.render()) == a


def test_parse_forms():
    assert Scalar.parse("3") == Scalar(3)
    assert Scalar.parse("-5/2") == Scalar(Fraction(-5, 2))
    assert Scalar.parse("2*i") == sc(0, 2)
    assert Scalar.parse("-i") == sc(0, -1)
    assert Scalar.parse("1/2+3/4*i") == sc(Fraction(1, 2), Fraction(3, 4))
    assert Scalar.parse("1/2-3/4*i") == sc(Fraction(1, 2), Fraction(-3, 4))
    assert Scalar.parse("0") == ZERO


@given(scalars)
def test_power(a):
    if not a.is_zero():
        assert a ** 0 == ONE
        assert a ** 3 == a * a * a
        assert a ** -2 == (a * a).inverse()
