from __future__ import annotations

import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from superjet.scalar import I, SQRT2, Scalar
from superjet.superpoly import SuperPoly, VarTable

settings.register_profile("superjet", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("superjet")

SMALL = VarTable([("x", 0), ("y", 0), ("a", 1), ("b", 1), ("c", 1)])

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw, allow_zero: bool = True) -> Scalar:
    q = [draw(rationals) for _ in range(4)]
    s = Scalar(q[0]) + I * q[1] + SQRT2 * q[2] + I * SQRT2 * q[3]
    if not allow_zero and s.is_zero():
        return Scalar(1)
    return s


@st.composite
def monomial_polys(draw, table: VarTable, names=None, max_len: int = 3) -> SuperPoly:
    names = list(names or table.names)
    picks = draw(st.lists(st.sampled_from(names), max_size=max_len))
    p = table.const(draw(scalars()))
    for n in picks:
        p = p * table.var(n)
    return p


@st.composite
def superpolys(draw, table: VarTable = SMALL, names=None, max_terms: int = 4, parity: int | None = None) -> SuperPoly:
    terms = draw(st.lists(monomial_polys(table, names), max_size=max_terms))
    p = sum(terms, table.zero())
    if parity is not None:
        p = parity_part(p, parity)
    return p


def parity_part(p: SuperPoly, k: int) -> SuperPoly:
    return SuperPoly(p.table, {m: c for m, c in p.terms.items() if len(m[1]) % 2 == k})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
