from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjet import f4 as f4mod
from superjet import rootkit as rk
from superjet.scalar import ONE, Scalar

L = f4mod.build_f4()
SUMMARY = {name: (ok, exp, got) for name, ok, exp, got in f4mod.f4_summary(L, jacobi=False)}
idx = st.integers(0, len(L) - 1)


@pytest.mark.parametrize("name", sorted(SUMMARY))
def test_summary_entry(name):
    ok, exp, got = SUMMARY[name]
    assert ok, (exp, got)


def test_dimension_and_parity_split():
    assert L.dim == (24, 16)
    assert sum(1 for i in range(len(L)) if L.parity(i)) == 16


@given(idx, idx, idx)
def test_super_jacobi_on_random_triples(x, y, z):
    assert not f4mod.jacobi_residual(L, x, y, z)


@given(idx, idx)
def test_bracket_is_super_antisymmetric(i, j):
    sign = ONE if (L.parity(i) and L.parity(j)) else -ONE
    assert L.bracket_basis(j, i) == {k: v * sign for k, v in L.bracket_basis(i, j).items()}


def test_jacobi_detects_a_corrupted_table():
    table = dict(L.table)
    i, j = L.index["phi0"], L.index["psi0"]
    table[(i, j)] = {k: v * 2 for k, v in table[(i, j)].items()}
    table[(j, i)] = {k: v * 2 for k, v in table[(j, i)].items()}
    bad = f4mod.SuperLieAlgebra(L.basis, table)
    assert not f4mod.verify_super_jacobi(bad).ok


def test_mixed_grading_dims():
    M = f4mod.mixed_grading(L)
    assert M.dims_by_degree() == {-2: (1, 0), -1: (6, 4), 0: (10, 8), 1: (6, 4), 2: (1, 0)}
    assert not f4mod.check_degrees(M)


def test_regrade_matches_root_counting():
    for label in sorted(rk.SIMPLE_SYSTEMS):
        for k in range(1, 5):
            spec = rk.GradingSpec(rk.simple_system(label), (k,))
            _, want = rk.grading_dims(spec)
            got = f4mod.regrade(L, spec.system, (k,)).dims_by_degree()
            assert got == want, (label, k)


def test_freudenthal_constant():
    rep = f4mod.freudenthal_check(L)
    assert rep["ok"] and rep["checked"] == 70
    assert rep["constant"] == Scalar(-1) / 6


def test_json_is_deterministic():
    a, b = L.to_json(), f4mod.build_f4().to_json()
    assert a == b
    data = json.loads(a)
    assert isinstance(data, dict)
