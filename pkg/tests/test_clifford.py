from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import rationals, scalars
from hypothesis import given, settings
from hypothesis import strategies as st

from superjet import clifford as cl
from superjet.scalar import Scalar

SUITE = {r.name: r for r in cl.clifford_suite()}
spinors = st.lists(scalars(), min_size=cl.DIM_S, max_size=cl.DIM_S).map(tuple)
rational_spinors = st.lists(rationals.map(Scalar), min_size=cl.DIM_S, max_size=cl.DIM_S).map(tuple)


@pytest.mark.parametrize("name", sorted(SUITE))
def test_suite_entry(name):
    r = SUITE[name]
    assert r.ok, (r.expected, r.got)


@pytest.mark.parametrize("p", range(4))
def test_contraction_factor_closed_form(p):
    assert cl.contraction_factor(p) == Scalar(7 - (7 - 2 * p) ** 2)


def test_omega_vanishing_rank():
    assert cl.omega_vanishing_rank() == 168


def test_cayley_normalisation():
    q = cl.cayley_quartic()
    assert cl.quartic_inner(q, q) == 14
    assert (cl.hodge_star(q) + q).is_zero()


def test_so_basis_size():
    assert len(cl.so_basis()) == 21


@settings(max_examples=10)
@given(rational_spinors, spinors)
def test_cubic_spinor_identity_random(s, t):
    assert not any(cl.cubic_spinor_residual(s, t))


@settings(max_examples=10)
@given(rational_spinors, spinors)
def test_fierz_random(s, t):
    rhs = cl.zeros(cl.DIM_S)
    for p in range(4):
        rhs = cl.mat_add(rhs, cl.omega_p(p, s, t).to_matrix())
    assert cl.outer(s, t) == cl.mat_scale(rhs, Fraction(1, 8))


@settings(max_examples=25)
@given(st.lists(scalars(), min_size=7, max_size=7), spinors, spinors)
def test_clifford_action_is_skew(v, s, t):
    assert cl.pairing(cl.clifford_act(v, s), t) == -cl.pairing(s, cl.clifford_act(v, t))


@settings(max_examples=25)
@given(st.lists(scalars(), min_size=7, max_size=7), spinors)
def test_clifford_relation(v, s):
    # v.v = -g(v, v) with g the split metric g(b_a, b_{6-a}) = 1
    vv = sum((v[a] * v[6 - a] for a in range(7)), Scalar(0))
    assert cl.clifford_act(v, cl.clifford_act(v, s)) == tuple(-vv * x for x in s)
