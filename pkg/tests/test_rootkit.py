from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from superjet import rootkit as rk

RESULTS = {name: (ok, exp, got) for name, ok, exp, got in rk.verify_root_system()}
LABELS = sorted(rk.SIMPLE_SYSTEMS)


@pytest.mark.parametrize("name", sorted(RESULTS))
def test_reference_check(name):
    ok, exp, got = RESULTS[name]
    assert ok, (exp, got)


def test_root_count():
    # so(7) + sl(2) has 9 + 1 positive roots; the odd part (8 x 2) contributes 8
    even = [a for a in rk.ALL_ROOTS if not rk.is_odd(a)]
    odd = [a for a in rk.ALL_ROOTS if rk.is_odd(a)]
    assert (len(even), len(odd)) == (20, 16)


def test_six_systems_by_odd_reflection():
    closure = rk.reflection_closure(rk.simple_system("I"))
    assert sorted(rk.identify(pi) for pi in closure) == LABELS


@pytest.mark.parametrize("label", LABELS)
def test_odd_reflection_is_an_involution(label):
    pi = rk.simple_system(label)
    for k, a in enumerate(pi.roots):
        if rk.is_odd(a) and rk.is_isotropic(a):
            back = rk.odd_reflect(rk.odd_reflect(pi, k), k)
            assert back.as_set() == pi.as_set()


@pytest.mark.parametrize("label", LABELS)
def test_positive_system_size_and_highest_root(label):
    even, odd = rk.positive_roots(rk.simple_system(label))
    assert (len(even), len(odd)) == (10, 8)
    highest = max(even + odd, key=sum)
    assert highest == rk.HIGHEST_ROOT_LABELS[label]


def test_odd_reflection_rejects_even_root():
    pi = rk.simple_system("I")
    with pytest.raises(ValueError):
        rk.odd_reflect(pi, 1)  # an even simple root


def test_cartan_matrix_of_vi_is_symmetrisable():
    cm = rk.cartan_matrix(rk.simple_system("VI"))
    for i, j in product(range(4), repeat=2):
        assert (cm[i][j] == 0) == (cm[j][i] == 0)
    assert cm[0][0] == Fraction(2)


def test_parabolic_depths():
    # a simple root with coefficient k in the highest root gives a grading of depth k
    for label in LABELS:
        for k in range(1, 5):
            mu, dims = rk.grading_dims(rk.GradingSpec(rk.simple_system(label), (k,)))
            assert mu == rk.HIGHEST_ROOT_LABELS[label][k - 1]
            assert sum(e + o for e, o in dims.values()) == 40
