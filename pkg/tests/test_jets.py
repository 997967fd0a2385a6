from __future__ import annotations

import pytest
from conftest import superpolys
from hypothesis import given, settings
from hypothesis import strategies as st

from superjet.jets import (JetContext, contact_field, euler_function, generating_function, lagrange_bracket,
                           preserves_cartan, prolong, total_derivative)

CTX1 = JetContext((0, 1, 1), 1)
CTX2 = JetContext((0, 1), 2)
FIRST1 = [n for n in CTX1.table.names]
FIRST2 = ["x0", "x1", "u", "u0", "u1"]


def functions(ctx, names, max_terms=3):
    return st.integers(0, 1).flatmap(
        lambda k: superpolys(ctx.table, names=names, max_terms=max_terms, parity=k))


def _sign(p) -> int:
    return -1 if p % 2 else 1


def test_context_coordinates():
    assert CTX2.table.names[:5] == ("x0", "x1", "u", "u0", "u1")
    # odd index repeated twice drops out of the second-order coordinates
    assert CTX2.name((1, 1)) not in CTX2.table.names
    with pytest.raises(ValueError):
        JetContext((0,), 4)


def test_total_derivative_of_u():
    D0 = total_derivative(CTX2, 0)
    assert D0(CTX2.u) == CTX2.p(0)
    assert D0(CTX2.p(1)) == CTX2.coord((0, 1))


def test_euler_function_generates_scaling():
    Z = contact_field(CTX1, euler_function(CTX1))
    assert Z(CTX1.u) == CTX1.u.scale(2)
    assert Z(CTX1.x(0)) == CTX1.x(0)
    assert Z(CTX1.p(0)) == CTX1.p(0)


@settings(max_examples=50)
@given(functions(CTX1, FIRST1), functions(CTX1, FIRST1))
def test_contact_fields_form_a_representation(f, g):
    lhs = contact_field(CTX1, f).bracket(contact_field(CTX1, g))
    assert lhs == contact_field(CTX1, lagrange_bracket(CTX1, f, g))


@settings(max_examples=50)
@given(functions(CTX1, FIRST1), functions(CTX1, FIRST1))
def test_lagrange_bracket_super_antisymmetric(f, g):
    s = _sign(f.parity() * g.parity() + 1)
    assert lagrange_bracket(CTX1, f, g) == lagrange_bracket(CTX1, g, f).scale(s)


@settings(max_examples=40)
@given(functions(CTX1, FIRST1, 2), functions(CTX1, FIRST1, 2), functions(CTX1, FIRST1, 2))
def test_lagrange_super_jacobi(f, g, h):
    br = lambda a, b: lagrange_bracket(CTX1, a, b)
    lhs = br(f, br(g, h))
    rhs = br(br(f, g), h) + br(g, br(f, h)).scale(_sign(f.parity() * g.parity()))
    assert lhs == rhs


@settings(max_examples=30)
@given(functions(CTX1, FIRST1))
def test_generating_function_roundtrip(f):
    assert generating_function(CTX1, contact_field(CTX1, f)) == f


@settings(max_examples=20)
@given(functions(CTX1, FIRST1, 2))
def test_contact_fields_preserve_cartan(f):
    assert preserves_cartan(CTX1, contact_field(CTX1, f))


@settings(max_examples=20)
@given(functions(CTX2, FIRST2, 2), functions(CTX2, FIRST2, 2))
def test_prolongation_is_a_homomorphism(f, g):
    lhs = prolong(CTX2, f).bracket(prolong(CTX2, g))
    assert lhs == prolong(CTX2, lagrange_bracket(CTX2, f, g))


@settings(max_examples=15)
@given(functions(CTX2, FIRST2, 2))
def test_prolongation_preserves_cartan(f):
    assert preserves_cartan(CTX2, prolong(CTX2, f))


def test_non_contact_field_is_detected():
    from superjet.jets import SuperVectorField
    X = SuperVectorField.partial(CTX1.table, "x0")
    Y = X.lmul(CTX1.u)
    assert not preserves_cartan(CTX1, Y)


def test_mixed_parity_generating_function_rejected():
    with pytest.raises(ValueError):
        contact_field(CTX1, CTX1.u + CTX1.x(1))
