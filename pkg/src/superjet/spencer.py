"""Spencer (Chevalley-Eilenberg) cochains of the negative part m acting on g.

Cochain coordinates:

* level 0: an element of g_d, keyed by the basis index of g;
* level 1: key ``(t, x)`` for the cochain sending m-basis element x to g-basis element t;
* level 2: key ``(t, (a, b))`` with a <= b, a == b only for odd a, holding the
  t-component of phi(X_a, X_b).  The other orderings follow from
  phi(Y, X) = -(-1)^{|x||y|} phi(X, Y).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import f4 as f4mod
from .linalg import ExactMatrix

GRADINGS = ("odd", "mixed")


@lru_cache(maxsize=None)
def graded_algebra(grading: str) -> f4mod.SuperLieAlgebra:
    L = f4mod.build_f4()
    if grading == "odd":
        return L
    if grading == "mixed":
        return f4mod.mixed_grading(L)
    raise ValueError(f"unknown grading {grading!r}")


def _m_indices(L) -> list[int]:
    return [i for i in range(len(L)) if L.degree(i) < 0]


def _pairs(L, m) -> list[tuple[int, int]]:
    out = []
    for ia, a in enumerate(m):
        for b in m[ia:]:
            if a == b and L.parity(a) == 0:
                continue
            out.append((a, b))
    return out


def cochain_basis(L, d: int, n: int) -> list:
    m = _m_indices(L)
    if n == 0:
        return [t for t in range(len(L)) if L.degree(t) == d]
    if n == 1:
        return [(t, x) for x in m for t in range(len(L)) if L.degree(t) - L.degree(x) == d]
    if n == 2:
        return [(t, ab) for ab in _pairs(L, m) for t in range(len(L))
                if L.degree(t) - L.degree(ab[0]) - L.degree(ab[1]) == d]
    raise ValueError("cochain level must be 0, 1 or 2")


def cochain_parity(L, key, n: int) -> int:
    if n == 0:
        return L.parity(key)
    if n == 1:
        return (L.parity(key[0]) + L.parity(key[1])) % 2
    t, (a, b) = key
    return (L.parity(t) + L.parity(a) + L.parity(b)) % 2


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _apply_d0(L, t: int) -> dict:
    """d phi(X) = (-1)^{x|phi|} [X, phi] for phi = basis element t."""
    out: dict = {}
    pt = L.parity(t)
    for x in _m_indices(L):
        sgn = _sign(L.parity(x) * pt)
        for r, c in L.bracket_basis(x, t).items():
            out[(r, x)] = c * sgn
    return out


def _apply_d1(L, key: tuple[int, int], pairs) -> dict:
    """Differential of the elementary 1-cochain X_c -> b_t, evaluated on canonical pairs."""
    t, c = key
    pphi = (L.parity(t) + L.parity(c)) % 2
    out: dict = {}

    def add(r, ab, val):
        k = (r, ab)
        v = out.get(k)
        v = val if v is None else v + val
        if v:
            out[k] = v
        else:
            out.pop(k, None)

    for a, b in pairs:
        pa, pb = L.parity(a), L.parity(b)
        if b == c:
            sgn = _sign(pa * pphi)
            for r, v in L.bracket_basis(a, t).items():
                add(r, (a, b), v * sgn)
        if a == c:
            sgn = -_sign(pb * (pa + pphi))
            for r, v in L.bracket_basis(b, t).items():
                add(r, (a, b), v * sgn)
        coef = L.bracket_basis(a, b).get(c)
        if coef:
            add(t, (a, b), -coef)
    return out


@dataclass
class Differential:
    n: int
    d: int
    grading: str
    matrix: ExactMatrix
    col_parity: list
    row_parity: list

    def rank_by_parity(self) -> tuple[int, int]:
        ranks = []
        cols = self.matrix.columns()
        for p in (0, 1):
            sub = [cols[j] for j in range(len(cols)) if self.col_parity[j] == p]
            ranks.append(ExactMatrix.from_columns(self.matrix.nrows, sub).rank() if sub else 0)
        return ranks[0], ranks[1]


def differential(n: int, d: int, grading: str) -> Differential:
    """Matrix of d: C^{d,n} -> C^{d,n+1} for n in {0, 1}."""
    L = graded_algebra(grading)
    src = cochain_basis(L, d, n)
    dst = cochain_basis(L, d, n + 1)
    pos = {k: i for i, k in enumerate(dst)}
    pairs = _pairs(L, _m_indices(L))
    cols = []
    for key in src:
        img = _apply_d0(L, key) if n == 0 else _apply_d1(L, key, pairs)
        col = {}
        for k, v in img.items():
            if k not in pos:
                raise AssertionError(f"differential left degree {d}: {k}")
            col[pos[k]] = v
        cols.append(col)
    m = ExactMatrix.from_columns(len(dst), cols, row_labels=dst, col_labels=src)
    return Differential(n, d, grading, m,
                        [cochain_parity(L, k, n) for k in src],
                        [cochain_parity(L, k, n + 1) for k in dst])


def dims_by_parity(L, keys, n) -> tuple[int, int]:
    e = sum(1 for k in keys if cochain_parity(L, k, n) == 0)
    return e, len(keys) - e


def check_d_squared(d: int, grading: str) -> bool:
    d0 = differential(0, d, grading).matrix
    d1 = differential(1, d, grading).matrix
    return (d1 @ d0).is_zero()


def _sub(a, b):
    return a[0] - b[0], a[1] - b[1]


@dataclass
class DegreeReport:
    d: int
    C0: tuple
    C1: tuple
    C2: tuple
    Z0: tuple
    B1: tuple
    Z1: tuple
    H0: tuple
    H1: tuple
    d_squared_zero: bool

    def as_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def degree_report(d: int, grading: str) -> DegreeReport:
    L = graded_algebra(grading)
    D0 = differential(0, d, grading)
    D1 = differential(1, d, grading)
    C0 = dims_by_parity(L, D0.matrix.col_labels, 0)
    C1 = dims_by_parity(L, D1.matrix.col_labels, 1)
    C2 = dims_by_parity(L, D1.matrix.row_labels, 2)
    r0 = D0.rank_by_parity()
    r1 = D1.rank_by_parity()
    Z0 = _sub(C0, r0)
    Z1 = _sub(C1, r1)
    return DegreeReport(d, C0, C1, C2, Z0, r0, Z1, Z0, _sub(Z1, r0), (D1.matrix @ D0.matrix).is_zero())


def cohomology_dims(d: int, n: int = 1, grading: str = "odd") -> tuple[int, int]:
    rep = degree_report(d, grading)
    if n == 0:
        return rep.H0
    if n == 1:
        return rep.H1
    raise ValueError("only H^{d,0} and H^{d,1} are computed")


def spencer_report(grading: str, degrees=range(0, 6)) -> list[DegreeReport]:
    return [degree_report(d, grading) for d in degrees]


def spencer_json(grading: str, degrees=range(0, 6)) -> str:
    return json.dumps({"grading": grading, "degrees": [r.as_dict() for r in spencer_report(grading, degrees)]},
                      sort_keys=True)


EXPECTED_H01 = {"odd": (7, 0), "mixed": (18, 16)}
# odd grading: B^{1,1} = Z^{1,1} is the spinor module, B^{2,1} = Z^{2,1} is a line
EXPECTED_ODD_ZB = {1: (0, 8), 2: (1, 0)}


def spencer_checks(grading: str, degrees=range(0, 6)) -> list[tuple[str, bool, object, object]]:
    res = []
    for r in spencer_report(grading, degrees):
        d = r.d
        res.append((f"{grading} d={d}: d^2 = 0", r.d_squared_zero, True, r.d_squared_zero))
        res.append((f"{grading} d={d}: H^(d,0) = 0", r.H0 == (0, 0), [0, 0], list(r.H0)))
        want = EXPECTED_H01[grading] if d == 0 else (0, 0)
        res.append((f"{grading} d={d}: H^(d,1)", r.H1 == want, list(want), list(r.H1)))
        if grading == "odd" and d in EXPECTED_ODD_ZB:
            zb = EXPECTED_ODD_ZB[d]
            ok = r.Z1 == zb and r.B1 == zb
            res.append((f"odd d={d}: B^(d,1) = Z^(d,1)", ok, [list(zb), list(zb)], [list(r.B1), list(r.Z1)]))
        if d >= 5:
            res.append((f"{grading} d={d}: C^(d,1) = 0", r.C1 == (0, 0), [0, 0], list(r.C1)))
    return res
