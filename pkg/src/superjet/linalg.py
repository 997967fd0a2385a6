"""Exact sparse linear algebra over Q(i, sqrt2).

Vectors are dicts ``key -> Scalar`` with zero entries omitted.  Elimination
picks the smallest available column as pivot so results are deterministic.
"""
from __future__ import annotations

import heapq
from typing import Hashable, Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar

Vector = dict


def vec_add(u: Mapping, v: Mapping, c: Scalar = ONE) -> dict:
    """Return u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Mapping, c: Scalar) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


class _Echelon:
    """Incremental row echelon form with optional combination tracking."""

    def __init__(self, order: Mapping[Hashable, int] | None = None, track: bool = False):
        self.pivots: dict = {}  # column position -> (row, combo)
        self.order = order
        self.track = track
        self._pos: dict = {} if order is None else dict(order)
        self._keys: dict = {}

    def _p(self, key) -> int:
        p = self._pos.get(key)
        if p is None:
            p = len(self._pos)
            self._pos[key] = p
        return p

    def to_positions(self, v: Mapping) -> dict:
        out = {}
        for k, x in v.items():
            if x:
                p = self._p(k)
                self._keys[p] = k
                out[p] = x
        return out

    def reduce(self, row: dict, combo: dict | None):
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if not v:
                continue
            prow, pcombo = pivots[c]
            for k, x in prow.items():
                old = row.get(k)
                if old is None:
                    row[k] = -(v * x)
                    if k in pivots and k != c:
                        heapq.heappush(heap, k)
                else:
                    nv = old - v * x
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
            if combo is not None:
                for k, x in pcombo.items():
                    old = combo.get(k)
                    nv = -(v * x) if old is None else old - v * x
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        return row, combo

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert a vector; return True if it was independent."""
        row = self.to_positions(v)
        combo = {tag: ONE} if self.track else None
        row, combo = self.reduce(row, combo)
        if not row:
            return False
        c = min(row)
        inv = row[c].inverse()
        row = {k: x * inv for k, x in row.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        self.pivots[c] = (row, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(vectors: Iterable[Mapping]) -> int:
    ech = _Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


class SpanSolver:
    """Express vectors as exact linear combinations of a fixed generating list."""

    def __init__(self, vectors: Sequence[Mapping]):
        self._ech = _Echelon(track=True)
        self.independent = []
        for i, v in enumerate(vectors):
            if self._ech.add(v, tag=i):
                self.independent.append(i)

    @property
    def rank(self) -> int:
        return self._ech.rank

    def express(self, v: Mapping) -> dict | None:
        """Coefficients {index: Scalar} with sum c_i v_i == v, or None if outside the span."""
        row = self._ech.to_positions(v)
        row, combo = self._ech.reduce(row, {})
        if row:
            return None
        return {k: -x for k, x in combo.items() if x}

    def contains(self, v: Mapping) -> bool:
        row = self._ech.to_positions(v)
        row, _ = self._ech.reduce(row, None)
        return not row


class ExactMatrix:
    """Sparse matrix with Scalar entries and optional row/column labels."""

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], Scalar] | None = None,
                 row_labels: Sequence | None = None, col_labels: Sequence | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict] = [dict() for _ in range(nrows)]
        for (r, c), x in (entries or {}).items():
            if x:
                self.rows[r][c] = Scalar.coerce(x)
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Scalar]], **kw) -> "ExactMatrix":
        m = cls(nrows, len(columns), **kw)
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    m.rows[r][c] = x
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], **kw) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols, **kw)
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                x = Scalar.coerce(x)
                if x:
                    m.rows[r][c] = x
        return m

    def get(self, r: int, c: int) -> Scalar:
        return self.rows[r].get(c, ZERO)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c, x in row.items():
                cols[c][r] = x
        return cols

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        out = ExactMatrix(self.nrows, other.ncols)
        for r, row in enumerate(self.rows):
            acc: dict = {}
            for k, x in row.items():
                acc = vec_add(acc, other.rows[k], x)
            out.rows[r] = acc
        return out

    def apply(self, v: Mapping[int, Scalar]) -> dict:
        out = {}
        for r, row in enumerate(self.rows):
            s = ZERO
            for c, x in row.items():
                y = v.get(c)
                if y:
                    s = s + x * y
            if s:
                out[r] = s
        return out

    def rank(self) -> int:
        return rank(self.rows)

    def kernel(self) -> list[dict]:
        """Basis of {x : A x = 0} as column-index dicts, from the reduced row echelon form."""
        ech = _Echelon(order={c: c for c in range(self.ncols)})
        for row in self.rows:
            ech.add(row)
        piv = sorted(ech.pivots)
        # back-substitute to reduced form
        reduced: dict[int, dict] = {}
        for c in reversed(piv):
            row = dict(ech.pivots[c][0])
            for k in [k for k in row if k != c and k in reduced]:
                row = vec_add(row, reduced[k], -row[k])
            reduced[c] = row
        free = [c for c in range(self.ncols) if c not in reduced]
        basis = []
        for f in free:
            v = {f: ONE}
            for c, row in reduced.items():
                x = row.get(f)
                if x:
                    v[c] = -x
            basis.append(v)
        return basis


def kernel_of_columns(nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> list[dict]:
    return ExactMatrix.from_columns(nrows, columns).kernel()
