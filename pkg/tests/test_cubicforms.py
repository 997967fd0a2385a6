from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import superpolys
from hypothesis import given, settings
from hypothesis import strategies as st

from superjet import cubicforms as cf
from superjet.superpoly import SuperPoly

SUMMARY = {name: (ok, exp, got) for name, ok, exp, got in cf.cubicforms_summary()}
T = cf.PARAMS


@pytest.mark.parametrize("name", sorted(SUMMARY))
def test_summary_entry(name):
    ok, exp, got = SUMMARY[name]
    assert ok, (exp, got)


def test_cubic_identity_residual_is_zero():
    assert cf.cubic_identity_residual().is_zero()


def test_compare_monomial_coefficient():
    rep = cf.verify_cubic_identity()
    assert rep.ok
    # both sides carry this monomial with the same nonzero coefficient
    assert rep.lhs_coefficient == rep.rhs_coefficient != 0


def test_identity_fails_for_wrong_constant():
    d = cf.CubicData()
    res = cf.cubic_identity_residual(d)
    pair = sum((d.t[c] * d.tstar[c] for c in range(4)), T.zero())
    assert not (res + (d.C * pair).scale(Fraction(1, 27))).is_zero()


@settings(max_examples=5)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool))
def test_invariant_cubic_kernels_are_lines(c1):
    assert cf.invariant_cubics_kernel(c1) == (1, 1)


def test_invariant_cubics_match_c():
    (k,) = cf.invariant_cubics(1, True)
    assert cf.proportional(k, cf.cubic_C())
    (k,) = cf.invariant_cubics(1, False)
    assert cf.proportional(k, cf.cubic_Cstar())


def test_osp22_rejects_zero():
    with pytest.raises(ValueError):
        cf.osp22_constants(0)


def _homogeneous_cubic(p: SuperPoly) -> SuperPoly:
    return SuperPoly(p.table, {m: c for m, c in p.terms.items()
                               if len(m[1]) % 2 == 0 and sum(e for _, e in m[0]) + len(m[1]) == 3})


@settings(max_examples=30)
@given(superpolys(T, names=cf.T_NAMES, max_terms=6))
def test_second_derivatives_are_supersymmetric(p):
    C = _homogeneous_cubic(p)
    _, C2 = cf.cubic_derivatives(C, cf.T_NAMES)
    for b in range(4):
        for c in range(4):
            s = -1 if (cf.W_PARITY[b] and cf.W_PARITY[c]) else 1
            assert C2[b][c] == C2[c][b].scale(s)


def test_generated_equals_printed():
    ctx = cf.second_order_context()
    assert cf.generate_second_order_system(ctx) == cf.printed_second_order_system(ctx)
    assert len(cf.printed_second_order_system(ctx)) == 9


def test_solved_form_routes_agree():
    ctx = cf.second_order_context()
    left, solved = cf.supervariety_and_osculation(ctx)
    assert solved == cf.solved_second_order_system(ctx)
    assert left == cf.supervariety_from_cubic()
    assert "u12" in solved and solved["u12"] == -ctx.var("u34")
