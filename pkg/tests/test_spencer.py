from __future__ import annotations

import json

import pytest

from superjet import spencer

DEGREES = range(0, 6)


@pytest.fixture(scope="module", params=spencer.GRADINGS)
def reports(request):
    return request.param, {r.d: r for r in spencer.spencer_report(request.param, DEGREES)}


def test_h01(reports):
    g, reps = reports
    assert reps[0].H1 == spencer.EXPECTED_H01[g]


def test_higher_h1_vanishes(reports):
    _, reps = reports
    for d in range(1, 5):
        assert reps[d].H1 == (0, 0), d


def test_h0_vanishes(reports):
    _, reps = reports
    assert all(r.H0 == (0, 0) for r in reps.values())


def test_d_squared_zero(reports):
    _, reps = reports
    assert all(r.d_squared_zero for r in reps.values())


def test_no_one_cochains_above_degree_four(reports):
    _, reps = reports
    assert reps[5].C1 == (0, 0)


def test_odd_boundaries():
    reps = {r.d: r for r in spencer.spencer_report("odd", (1, 2))}
    for d, zb in spencer.EXPECTED_ODD_ZB.items():
        assert reps[d].B1 == zb and reps[d].Z1 == zb


@pytest.mark.parametrize("grading", spencer.GRADINGS)
@pytest.mark.parametrize("n", (0, 1))
def test_differential_preserves_parity(grading, n):
    D = spencer.differential(n, 1, grading)
    for c, col in enumerate(D.matrix.columns()):
        for r in col:
            assert D.row_parity[r] == D.col_parity[c]


def test_cochain_basis_counts():
    L = spencer.graded_algebra("odd")
    # C^{0,0} = g_0
    assert len(spencer.cochain_basis(L, 0, 0)) == 22
    with pytest.raises(ValueError):
        spencer.cochain_basis(L, 0, 3)


def test_unknown_grading():
    with pytest.raises(ValueError):
        spencer.graded_algebra("even")


def test_json_report_is_deterministic():
    a = spencer.spencer_json("odd", (0, 1))
    assert a == spencer.spencer_json("odd", (0, 1))
    assert json.loads(a)["degrees"][0]["H1"] == [7, 0]
