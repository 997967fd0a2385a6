from __future__ import annotations

import sympy
from conftest import rationals, scalars
from hypothesis import given
from hypothesis import strategies as st

from superjet.linalg import ExactMatrix, SpanSolver, kernel_of_columns, rank, vec_add, vec_scale
from superjet.scalar import I, ONE, ZERO, Scalar


def _to_sympy(x: Scalar):
    q = x.parts()
    r2 = sympy.sqrt(2)
    return sympy.Rational(q[0]) + sympy.I * sympy.Rational(q[1]) + r2 * sympy.Rational(q[2]) \
        + sympy.I * r2 * sympy.Rational(q[3])


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(scalars(), min_size=n, max_size=n), min_size=1, max_size=5))
rational_matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=1, max_size=6))


@given(rational_matrices)
def test_rank_agrees_with_sympy_over_q(rows):
    M = ExactMatrix.from_rows(rows)
    assert M.rank() == sympy.Matrix(rows).rank()


@given(matrices)
def test_rank_agrees_with_sympy_over_extension(rows):
    M = ExactMatrix.from_rows(rows)
    S = sympy.Matrix([[_to_sympy(Scalar.coerce(v)) for v in r] for r in rows])
    assert M.rank() == S.rank(simplify=True)


@given(matrices)
def test_rank_nullity(rows):
    M = ExactMatrix.from_rows(rows)
    K = M.kernel()
    assert M.rank() + len(K) == M.ncols
    for v in K:
        assert not M.apply(v)


@given(st.lists(st.dictionaries(st.integers(0, 4), scalars(allow_zero=False), max_size=4), max_size=5),
       st.lists(scalars(), min_size=5, max_size=5))
def test_span_solver_expresses_combinations(vectors, coeffs):
    target: dict = {}
    for v, c in zip(vectors, coeffs):
        target = vec_add(target, v, c)
    S = SpanSolver(vectors)
    combo = S.express(target)
    assert combo is not None
    back: dict = {}
    for i, c in combo.items():
        back = vec_add(back, vectors[i], c)
    assert back == target
    assert S.rank == rank(vectors)


def test_span_solver_rejects_outside():
    S = SpanSolver([{0: ONE, 1: I}])
    assert S.express({0: ONE}) is None
    assert S.express({0: I, 1: -ONE}) == {0: I}


def test_kernel_of_columns():
    cols = [{0: ONE}, {0: ONE}, {1: ONE}]
    (k,) = kernel_of_columns(2, cols)
    assert k[0] == -k[1] and k.get(2, ZERO) == ZERO


def test_matmul_and_scale():
    A = ExactMatrix.from_rows([[1, 2], [3, 4]])
    B = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert (A @ B).get(0, 0) == Scalar(2)
    assert vec_scale({0: ONE}, I) == {0: I}
