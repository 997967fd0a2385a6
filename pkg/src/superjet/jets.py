"""Jet superspaces J^1, J^2, J^3 of one even dependent variable.

Coordinates are named ``x0, x1, ...`` (independent), ``u``, ``u0, u1, ...``
(first order), ``u01, ...`` (second order) and ``u012, ...`` (third order).
Only canonical index tuples are stored: even indices before odd ones, each
group ascending, with no repeated odd index.  Any other ordering is reached
through :meth:`JetContext.coord`, which carries the reordering sign.
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .superpoly import SuperPoly, VarTable


class JetContext:
    def __init__(self, parities: Sequence[int], order: int = 1, extra: Iterable[tuple[str, object]] = ()):
        if not 1 <= order <= 3:
            raise ValueError("jet order must be 1, 2 or 3")
        if len(parities) > 10:
            raise ValueError("at most 10 independent variables (single-digit index names)")
        self.parities = tuple(int(p) for p in parities)
        self.n = len(self.parities)
        self.order = order
        self.canonical_order = sorted(range(self.n), key=self._key)
        decls = [(f"x{i}", p) for i, p in enumerate(self.parities)]
        decls.append(("u", 0))
        decls += [(f"u{i}", p) for i, p in enumerate(self.parities)]
        self.pairs = self._multi(2) if order >= 2 else []
        self.triples = self._multi(3) if order >= 3 else []
        decls += [(self.name(t), self.index_parity(t)) for t in self.pairs + self.triples]
        decls += list(extra)
        self.table = VarTable(decls)

    def __eq__(self, other):
        return isinstance(other, JetContext) and self.table == other.table and self.order == other.order

    def __hash__(self):
        return hash((self.table, self.order))

    def _key(self, i: int):
        return (self.parities[i], i)

    def _multi(self, k: int) -> list[tuple[int, ...]]:
        out = []
        for t in combinations_with_replacement(self.canonical_order, k):
            if any(t[j] == t[j + 1] and self.parities[t[j]] for j in range(k - 1)):
                continue
            out.append(t)
        return out

    @staticmethod
    def name(indices: Sequence[int]) -> str:
        return "u" + "".join(str(i) for i in indices)

    def index_parity(self, indices: Sequence[int]) -> int:
        return sum(self.parities[i] for i in indices) % 2

    def canonical(self, indices: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
        """(sign, canonical tuple), or (0, None) when an odd index repeats."""
        idx = list(indices)
        sign = 1
        for a in range(len(idx)):
            for b in range(len(idx) - 1 - a):
                i, j = idx[b], idx[b + 1]
                if self._key(i) > self._key(j):
                    idx[b], idx[b + 1] = j, i
                    if self.parities[i] and self.parities[j]:
                        sign = -sign
        for a in range(len(idx) - 1):
            if idx[a] == idx[a + 1] and self.parities[idx[a]]:
                return 0, None
        return sign, tuple(idx)

    def coord(self, indices: Sequence[int]) -> SuperPoly:
        """The jet coordinate u_{indices} with the supersymmetry sign applied."""
        if not indices:
            return self.u
        sign, canon = self.canonical(indices)
        if not sign:
            return self.table.zero()
        v = self.table.var(self.name(canon))
        return v if sign > 0 else -v

    def coord_id(self, indices: Sequence[int]) -> int:
        return self.table.id(self.name(indices))

    @cached_property
    def u(self) -> SuperPoly:
        return self.table.var("u")

    def x(self, i: int) -> SuperPoly:
        return self.table.var(f"x{i}")

    def p(self, i: int) -> SuperPoly:
        return self.table.var(f"u{i}")

    def var(self, name: str) -> SuperPoly:
        return self.table.var(name)

    def parse(self, text: str) -> SuperPoly:
        return self.table.parse(text)

    def first_order_ids(self) -> set[int]:
        names = [f"x{i}" for i in range(self.n)] + ["u"] + [f"u{i}" for i in range(self.n)]
        return {self.table.id(n) for n in names}

    def with_order(self, order: int) -> "JetContext":
        return JetContext(self.parities, order)

    def lift(self, f: SuperPoly) -> SuperPoly:
        """Re-express a polynomial from another jet table over this one (by variable name)."""
        if f.table == self.table:
            return f
        return f.substitute({}, target=self.table)


class SuperVectorField:
    """Derivation sum_v coeff_v * d/dv with coefficients written on the left."""

    __slots__ = ("table", "coeffs", "parity")

    def __init__(self, table: VarTable, coeffs: Mapping[int, SuperPoly], parity: int):
        self.table = table
        self.coeffs = {v: c for v, c in coeffs.items() if c}
        self.parity = parity

    @classmethod
    def partial(cls, table: VarTable, name: str) -> "SuperVectorField":
        v = table.id(name)
        return cls(table, {v: table.one()}, table.parity(v))

    def __call__(self, f: SuperPoly) -> SuperPoly:
        out = self.table.zero()
        for v, c in self.coeffs.items():
            d = f.partial(v)
            if d:
                out = out + c * d
        return out

    def __add__(self, other: "SuperVectorField") -> "SuperVectorField":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return SuperVectorField(self.table, out, self.parity)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SuperVectorField":
        return SuperVectorField(self.table, {v: x.scale(c) for v, x in self.coeffs.items()}, self.parity)

    def lmul(self, g: SuperPoly) -> "SuperVectorField":
        """The field g * X (function on the left)."""
        par = (g.parity() + self.parity) % 2 if g else self.parity
        return SuperVectorField(self.table, {v: g * x for v, x in self.coeffs.items()}, par)

    def bracket(self, other: "SuperVectorField") -> "SuperVectorField":
        sign = -1 if (self.parity and other.parity) else 1
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for v in keys:
            a = self(other.coeffs[v]) if v in other.coeffs else self.table.zero()
            b = other(self.coeffs[v]) if v in self.coeffs else self.table.zero()
            out[v] = a - b if sign > 0 else a + b
        return SuperVectorField(self.table, out, (self.parity + other.parity) % 2)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, SuperVectorField) and self.coeffs == other.coeffs and self.table == other.table

    def component(self, name: str) -> SuperPoly:
        return self.coeffs.get(self.table.id(name), self.table.zero())

    def __repr__(self):
        body = " + ".join(f"({c})*d_{self.table.names[v]}" for v, c in sorted(self.coeffs.items()))
        return f"SuperVectorField({body or '0'})"


# --- total derivatives ----------------------------------------------------------------

def total_derivative(ctx: JetContext, i: int, order: int | None = None) -> SuperVectorField:
    """D_{x^i} truncated at the given order (1: D, 2: D-tilde, 3: D-check)."""
    order = ctx.order if order is None else order
    if order > ctx.order:
        raise ValueError("context order too small for the requested truncation")
    t = ctx.table
    coeffs = {t.id(f"x{i}"): t.one(), t.id("u"): ctx.p(i)}
    if order >= 2:
        for j in range(ctx.n):
            c = ctx.coord((i, j))
            if c:
                coeffs[t.id(f"u{j}")] = c
    if order >= 3:
        for jk in ctx.pairs:
            c = ctx.coord((i,) + jk)
            if c:
                coeffs[ctx.coord_id(jk)] = c
    return SuperVectorField(t, coeffs, ctx.parities[i])


def _require_parity(f: SuperPoly) -> int:
    p = f.parity()
    if p is None:
        raise ValueError("generating superfunction must be parity-homogeneous")
    return p


def contact_field(ctx: JetContext, f: SuperPoly) -> SuperVectorField:
    """The contact field S_f on J^1 generated by f (coefficients over ctx.table)."""
    f = ctx.lift(f)
    pf = _require_parity(f)
    t = ctx.table
    field = SuperVectorField(t, {t.id("u"): f}, pf)
    for i in range(ctx.n):
        pi = ctx.parities[i]
        D = total_derivative(ctx, i, 1)
        a = f.partial(f"u{i}")
        if a:
            s = -1 if (pi * (pf + 1)) % 2 else 1
            field = field - D.lmul(a).scale(s)
        b = D(f)
        if b:
            s = -1 if (pi * pf) % 2 else 1
            field = field + SuperVectorField(t, {t.id(f"u{i}"): b.scale(s)}, pf)
    field.parity = pf
    return field


def lagrange_bracket(ctx: JetContext, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    f, g = ctx.lift(f), ctx.lift(g)
    pf, pg = _require_parity(f), _require_parity(g)
    out = f * g.partial("u")
    term = g * f.partial("u")
    out = out + term if (pf and pg) else out - term
    for i in range(ctx.n):
        pi = ctx.parities[i]
        D = total_derivative(ctx, i, 1)
        a = D(f) * g.partial(f"u{i}")
        out = out - a if (pi * pf) % 2 else out + a
        b = D(g) * f.partial(f"u{i}")
        out = out + b if (pg * (pf + pi)) % 2 else out - b
    return out


def prolong(ctx: JetContext, f: SuperPoly, order: int | None = None) -> SuperVectorField:
    """Prolongation of S_f to J^2 or J^3."""
    order = ctx.order if order is None else order
    if order > ctx.order:
        raise ValueError("context order too small for the requested prolongation")
    f = ctx.lift(f)
    pf = _require_parity(f)
    field = contact_field(ctx, f)
    if order < 2:
        return field
    t = ctx.table
    D2 = [total_derivative(ctx, i, 2) for i in range(ctx.n)]
    coeffs = dict(field.coeffs)
    first = [D2[k](f) for k in range(ctx.n)]
    for j, k in ctx.pairs:
        h = D2[j](first[k])
        if (ctx.index_parity((j, k)) * pf) % 2:
            h = -h
        if h:
            coeffs[ctx.coord_id((j, k))] = h
    if order >= 3:
        D3 = [total_derivative(ctx, i, 3) for i in range(ctx.n)]
        cache: dict = {}

        def dd(idx):
            if idx not in cache:
                cache[idx] = f if not idx else D3[idx[0]](dd(idx[1:]))
            return cache[idx]

        for trip in ctx.triples:
            h = dd(trip)
            if (ctx.index_parity(trip) * pf) % 2:
                h = -h
            if h:
                coeffs[ctx.coord_id(trip)] = h
    return SuperVectorField(t, coeffs, pf)


# --- Cartan distribution checks ----------------------------------------------------------

def contact_forms(ctx: JetContext, order: int | None = None):
    """Evaluators W -> iota_W sigma, iota_W sigma_k, iota_W sigma_jk (as functions)."""
    order = ctx.order if order is None else order
    xs = [ctx.x(i) for i in range(ctx.n)]
    forms = []

    def make(target: SuperPoly, coeff_of):
        def ev(W: SuperVectorField) -> SuperPoly:
            out = W(target)
            for i in range(ctx.n):
                c = coeff_of(i)
                if c:
                    out = out - W(xs[i]) * c
            return out
        return ev

    forms.append(("sigma", make(ctx.u, ctx.p)))
    if order >= 2:
        for k in range(ctx.n):
            forms.append((f"sigma_{k}", make(ctx.p(k), lambda i, k=k: ctx.coord((i, k)))))
    if order >= 3:
        for jk in ctx.pairs:
            forms.append((f"sigma_{ctx.name(jk)[1:]}",
                          make(ctx.coord(jk), lambda i, jk=jk: ctx.coord((i,) + jk))))
    return forms


def cartan_generators(ctx: JetContext, order: int | None = None) -> list[SuperVectorField]:
    order = ctx.order if order is None else order
    t = ctx.table
    gens = [total_derivative(ctx, i, order) for i in range(ctx.n)]
    if order == 1:
        gens += [SuperVectorField.partial(t, f"u{i}") for i in range(ctx.n)]
    elif order == 2:
        gens += [SuperVectorField.partial(t, ctx.name(p)) for p in ctx.pairs]
    else:
        gens += [SuperVectorField.partial(t, ctx.name(p)) for p in ctx.triples]
    return gens


def preserves_cartan(ctx: JetContext, X: SuperVectorField, order: int | None = None) -> bool:
    """True iff [X, Y] lies in the Cartan distribution for every generator Y."""
    forms = contact_forms(ctx, order)
    for Y in cartan_generators(ctx, order):
        W = X.bracket(Y)
        for _, ev in forms:
            if ev(W):
                return False
    return True


def generating_function(ctx: JetContext, X: SuperVectorField) -> SuperPoly:
    """iota_X sigma = X(u) - X(x^i) u_i."""
    return contact_forms(ctx, 1)[0][1](X)


def euler_function(ctx: JetContext) -> SuperPoly:
    """The grading symmetry 2u - x^i u_i."""
    out = ctx.u.scale(2)
    for i in range(ctx.n):
        out = out - ctx.x(i) * ctx.p(i)
    return out
