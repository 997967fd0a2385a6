from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjet import pdesym as ps
from superjet.jets import JetContext, euler_function, lagrange_bracket
from superjet.scalar import Scalar

SYSTEM2 = ps.second_order_system()
TABLE2 = ps.mixed_table(SYSTEM2.ctx)
_, SYSTEM3, INFO3 = ps.build_incidence_pipeline()
TABLE3 = ps.odd_table(SYSTEM3.ctx)


def _combos(table):
    """Random same-parity linear combinations of table entries."""
    by_parity = {p: [g.f for g in table if g.parity == p] for p in (0, 1)}

    @st.composite
    def draw(draw_):
        p = draw_(st.integers(0, 1))
        pool = by_parity[p]
        picks = draw_(st.lists(st.tuples(st.sampled_from(pool), st.integers(-3, 3)), min_size=1, max_size=3))
        f = pool[0].table.zero()
        for g, c in picks:
            f = f + g.scale(c)
        return f
    return draw()


# --- solved form ---------------------------------------------------------------------------

def test_solved_form_free_coordinates():
    assert SYSTEM2.free == ["u22", "u23", "u24", "u34"]
    assert SYSTEM2.solved["u12"] == -SYSTEM2.ctx.var("u34")
    for rhs in SYSTEM2.solved.values():
        assert not (rhs.variables() & {SYSTEM2.ctx.table.id(k) for k in SYSTEM2.solved})


def test_cyclic_solved_form_is_rejected():
    ctx = JetContext((0, 0), 2)
    with pytest.raises(ps.SolvedFormError):
        ps.PDESystem(ctx, {"u00": "u01", "u01": "u00"})


def test_parity_mismatch_is_rejected():
    ctx = JetContext((0, 1), 2)
    with pytest.raises(ValueError):
        ps.PDESystem(ctx, {"u00": "u01"})


def test_system_json_schema():
    data = SYSTEM2.to_json()
    assert set(data) == {"context", "determined", "free"}
    assert data["context"]["order"] == 2
    assert len(data["determined"]) == 9
    json.dumps(data)


def test_free_equation_has_trivial_symmetries():
    ctx = JetContext((0,), 2)
    system = ps.PDESystem(ctx, {"u00": ctx.table.zero()})
    # u'' = 0 is preserved by the projective algebra (x^2 d_x + x u d_u has f = xu - x^2 u_x);
    # x u d_u and u^2 are not symmetries
    x, u, p = ctx.x(0), ctx.u, ctx.p(0)
    assert ps.is_symmetry(system, x * u - x * x * p)[0]
    assert not ps.is_symmetry(system, x * u)[0]
    assert ps.is_symmetry(system, ctx.u)[0]
    assert not ps.is_symmetry(system, ctx.u * ctx.u)[0]


# --- symmetry tables ---------------------------------------------------------------------------

@pytest.mark.parametrize("system,table", [(SYSTEM2, TABLE2), (SYSTEM3, TABLE3)], ids=["mixed", "odd"])
def test_every_table_entry_is_a_symmetry(system, table):
    bad = [g.label for g in table if not ps.is_symmetry(system, g.f)[0]]
    assert not bad


@pytest.mark.parametrize("system", [SYSTEM2, SYSTEM3], ids=["mixed", "odd"])
def test_u_squared_is_not_a_symmetry(system):
    assert not ps.is_symmetry(system, system.ctx.u * system.ctx.u)[0]


@settings(max_examples=100)
@given(_combos(TABLE2), _combos(TABLE2))
def test_bracket_of_symmetries_is_a_symmetry(f, g):
    assert ps.is_symmetry(SYSTEM2, f)[0] and ps.is_symmetry(SYSTEM2, g)[0]
    assert ps.is_symmetry(SYSTEM2, lagrange_bracket(SYSTEM2.ctx, f, g))[0]


def test_table_dims_by_degree():
    B2 = ps.assemble_symmetry_algebra(SYSTEM2.ctx, TABLE2)
    assert B2.dim == (24, 16)
    assert B2.dims_by_degree() == {-2: (1, 0), -1: (6, 4), 0: (10, 8), 1: (6, 4), 2: (1, 0)}
    B3 = ps.assemble_symmetry_algebra(SYSTEM3.ctx, TABLE3)
    assert B3.dims_by_degree() == {-2: (1, 0), -1: (0, 8), 0: (22, 0), 1: (0, 8), 2: (1, 0)}
    assert not ps.grading_check(B2) and not ps.grading_check(B3)


def test_bracket_outside_span_escapes():
    ctx = SYSTEM2.ctx
    with pytest.raises(ps.BracketEscape):
        ps.assemble_symmetry_algebra(ctx, [ps.Generator("uu", ctx.u * ctx.u, 2), ps.Generator("x1", ctx.x(1), -1)])


def test_f0ss_slice():
    rep = ps.f0ss_check(SYSTEM2.ctx)
    assert rep["dims"] == (4, 4) and rep["same_span"]


@pytest.mark.parametrize("base", ["g2", "x3+", "psi11", "Z"])
def test_perturbation_probe(base):
    rep = ps.perturbation_probe(SYSTEM2, TABLE2, base)
    assert rep.ok and rep.base_is_symmetry and rep.kernel_in_span


# --- odd-contact pipeline --------------------------------------------------------------------

def test_incidence_pipeline():
    assert INFO3["matches_printed"] and INFO3["resubstitution_vanishes"]
    assert INFO3["expgm_matches_printed"] and INFO3["expgm_spin_route_matches"]
    assert len(SYSTEM3.solved) == 3


def test_chart_matrix_routes_agree():
    ctx = ps.chart_context()
    assert ps.expgm(ctx, "pattern") == ps.expgm(ctx, "spin") == ps.printed_expgm(ctx)


def test_derived_flag():
    rep = ps.flag_report()
    assert [tuple(g) for g in rep["growth"]] == [(3, 1), (3, 3), (0, 3), (0, 1), (1, 0)]
    assert all(rep["checks"].values())


def test_quartic_space_is_the_table_span():
    ctx = ps.odd_context(1)
    dims, basis = ps.quartic_symmetry_space(ctx, 4)
    assert dims == (24, 16)
    gens = [g.f for g in ps.odd_table(ctx)]
    assert all(ps.span_contains(gens, b) for b in basis)


def test_quartic_scaling_weights():
    ctx = ps.odd_context(1)
    ok, mu = ps.quartic_symmetry_check(ctx, euler_function(ctx))
    assert ok and mu.constant_value() == Scalar(4)
    assert not ps.quartic_symmetry_check(ctx, ctx.u * ctx.u)[0]


def test_isomorphism_witness():
    w = ps.isomorphism_witness()
    assert w.ok and w.pairs_checked == 1600


def test_witness_fails_without_the_spinor_scale():
    w = ps.isomorphism_witness(spinor_scale=Scalar(1))
    assert not w.ok


def test_solution_space():
    sol = ps.solution_space(SYSTEM3)
    assert sol.dims == (7, 5) and sol.residual_zero
    assert set(sol.constraints) == {"th012", "th013", "th023", "lam0123"}
    assert sol.constraints["lam0123"].is_zero()


def test_freudenthal_constant_matches_model():
    ft = ps.freudenthal_table_check()
    assert ft["ok"] and ft["constant"] == Scalar(-1) / 6
