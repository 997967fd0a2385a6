from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import scalars
from hypothesis import given

from superjet.scalar import I, ONE, SQRT2, ZERO, Scalar


def test_generators_square():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == Scalar(2)
    assert (I * SQRT2) * (I * SQRT2) == Scalar(-2)


def test_rational_coercion():
    assert Scalar.coerce(Fraction(1, 3)) * 3 == ONE
    assert Scalar.coerce(0) == ZERO
    assert Scalar(Fraction(1, 2)).is_rational()
    assert not (ONE + I).is_rational()


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(scalars(allow_zero=False))
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(scalars())
def test_json_roundtrip(a):
    assert Scalar.from_json(a.to_json()) == a
