"""Supercommutative polynomials with exact coefficients in Q(i, sqrt2).

A monomial is a pair ``(evens, odds)`` where ``evens`` is a sorted tuple of
``(var_id, exponent)`` pairs and ``odds`` is a strictly ascending tuple of odd
variable ids.  Odd variables are kept in declaration order, and any sign picked
up while reordering is folded into the coefficient, so equal polynomials have
equal term dictionaries.
"""
from __future__ import annotations

import ast
from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .scalar import I, ONE, SQRT2, ZERO, Scalar

EVEN, ODD = 0, 1

Monomial = tuple  # (tuple[(int, int)], tuple[int])
UNIT: Monomial = ((), ())


def _parity_code(p) -> int:
    if p in (0, "even", "0", False):
        return EVEN
    if p in (1, "odd", "1", True):
        return ODD
    raise ValueError(f"unknown parity {p!r}")


class VarTable:
    """Ordered declaration of named even/odd variables."""

    __slots__ = ("names", "parities", "_index", "_sig")

    def __init__(self, decls: Iterable[tuple[str, object]] = ()):
        names: list[str] = []
        parities: list[int] = []
        index: dict[str, int] = {}
        for name, parity in decls:
            if name in index:
                raise ValueError(f"duplicate variable name {name!r}")
            index[name] = len(names)
            names.append(name)
            parities.append(_parity_code(parity))
        self.names = tuple(names)
        self.parities = tuple(parities)
        self._index = index
        self._sig = (self.names, self.parities)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and (self is other or self._sig == other._sig)

    def __hash__(self):
        return hash(self._sig)

    def __repr__(self):
        decl = ", ".join(f"{n}:{'odd' if p else 'even'}" for n, p in zip(self.names, self.parities))
        return f"VarTable({decl})"

    def __contains__(self, name):
        return name in self._index

    def id(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"undeclared variable {name!r}") from None

    def parity(self, v) -> int:
        if isinstance(v, str):
            v = self.id(v)
        return self.parities[v]

    def extend(self, decls: Iterable[tuple[str, object]]) -> "VarTable":
        return VarTable(list(zip(self.names, self.parities)) + list(decls))

    def var(self, name) -> "SuperPoly":
        v = self.id(name) if isinstance(name, str) else name
        key = ((), (v,)) if self.parities[v] else (((v, 1),), ())
        return SuperPoly(self, {key: ONE})

    def vars(self, names: str | Iterable[str]) -> list["SuperPoly"]:
        if isinstance(names, str):
            names = names.split()
        return [self.var(n) for n in names]

    def zero(self) -> "SuperPoly":
        return SuperPoly(self, {})

    def one(self) -> "SuperPoly":
        return SuperPoly(self, {UNIT: ONE})

    def const(self, c) -> "SuperPoly":
        c = Scalar.coerce(c)
        return SuperPoly(self, {UNIT: c} if c else {})

    def parse(self, text: str) -> "SuperPoly":
        """Parse an arithmetic expression over the declared variables.

        Supports ``+ - * / **`` (division only by numbers), integer literals,
        parentheses and the constants ``I`` and ``SQRT2``.
        """
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _ParseVisitor(self).visit(tree.body)


class _ParseVisitor(ast.NodeVisitor):
    def __init__(self, table: VarTable):
        self.table = table

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    def visit_Constant(self, node):
        if isinstance(node.value, int):
            return self.table.const(node.value)
        raise ValueError(f"unsupported literal {node.value!r}")

    def visit_Name(self, node):
        if node.id in self.table:
            return self.table.var(node.id)
        if node.id == "I":
            return self.table.const(I)
        if node.id == "SQRT2":
            return self.table.const(SQRT2)
        raise KeyError(f"undeclared variable {node.id!r}")

    def visit_UnaryOp(self, node):
        val = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ValueError("exponent must be a non-negative integer literal")
            return left ** node.right.value
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            c = right.constant_value()
            if c is None:
                raise ValueError("division only by constants")
            return left * c.inverse()
        return self.generic_visit(node)


# --- monomial kernels (cached: the same monomial pairs recur constantly) ----

@lru_cache(maxsize=1 << 20)
def _mono_mul(m1: Monomial, m2: Monomial):
    o1, o2 = m1[1], m2[1]
    sign = 1
    if o1 and o2:
        if not set(o1).isdisjoint(o2):
            return None
        inv = 0
        for b in o2:
            inv += len(o1) - bisect_right(o1, b)
        if inv & 1:
            sign = -1
        odds = tuple(sorted(o1 + o2))
    else:
        odds = o1 or o2
    e1, e2 = m1[0], m2[0]
    if not e1:
        evens = e2
    elif not e2:
        evens = e1
    else:
        d = dict(e1)
        for v, k in e2:
            d[v] = d.get(v, 0) + k
        evens = tuple(sorted(d.items()))
    return (evens, odds), sign


@lru_cache(maxsize=1 << 20)
def _mono_partial(m: Monomial, v: int, odd: bool):
    evens, odds = m
    if odd:
        if v not in odds:
            return None
        pos = odds.index(v)
        return (evens, odds[:pos] + odds[pos + 1:]), (-1 if pos & 1 else 1)
    for idx, (w, k) in enumerate(evens):
        if w == v:
            if k == 1:
                new = evens[:idx] + evens[idx + 1:]
            else:
                new = evens[:idx] + ((v, k - 1),) + evens[idx + 1:]
            return (new, odds), k
    return None


def _scalar(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.coerce(c)


class SuperPoly:
    """Element of the free supercommutative algebra on a :class:`VarTable`."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[Monomial, Scalar] | None = None):
        self.table = table
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def _trusted(cls, table: VarTable, terms: dict) -> "SuperPoly":
        p = object.__new__(cls)
        p.table = table
        p.terms = terms
        return p

    # basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def parity(self):
        """0 or 1 for homogeneous polynomials (0 for zero), None if mixed."""
        ps = {len(m[1]) & 1 for m in self.terms}
        if not ps:
            return EVEN
        if len(ps) > 1:
            return None
        return ps.pop()

    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def constant_term(self) -> Scalar:
        return self.terms.get(UNIT, ZERO)

    def constant_value(self):
        """The scalar if the polynomial is constant, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and UNIT in self.terms:
            return self.terms[UNIT]
        return None

    def variables(self) -> set[int]:
        out: set[int] = set()
        for evens, odds in self.terms:
            out.update(v for v, _ in evens)
            out.update(odds)
        return out

    def degree(self) -> int:
        return max((sum(k for _, k in e) + len(o) for e, o in self.terms), default=-1)

    def _check(self, other: "SuperPoly"):
        if self.table is not other.table and self.table != other.table:
            raise ValueError("SuperPoly operands live over different variable tables")

    def _lift(self, other) -> "SuperPoly | None":
        if isinstance(other, SuperPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.table.const(other)
        return None

    # ring operations ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, v in b.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return SuperPoly._trusted(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._trusted(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "SuperPoly":
        c = _scalar(c)
        if not c:
            return SuperPoly._trusted(self.table, {})
        if c == ONE:
            return self
        return SuperPoly._trusted(self.table, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                r = _mono_mul(k1, k2)
                if r is None:
                    continue
                key, sign = r
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = out.get(key)
                out[key] = c if s is None else s + c
        return SuperPoly._trusted(self.table, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(_scalar(other).inverse())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.table.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            c = self.constant_value()
            return c is not None and c == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # superderivations -----------------------------------------------------
    def partial(self, v) -> "SuperPoly":
        """Left derivative with respect to variable ``v`` (name or id)."""
        if isinstance(v, str):
            v = self.table.id(v)
        odd = bool(self.table.parities[v])
        out: dict = {}
        for key, c in self.terms.items():
            r = _mono_partial(key, v, odd)
            if r is None:
                continue
            nk, f = r
            c = c * f if f != 1 else c
            s = out.get(nk)
            out[nk] = c if s is None else s + c
        return SuperPoly._trusted(self.table, {k: x for k, x in out.items() if x})

    # substitution ---------------------------------------------------------
    def substitute(self, mapping: Mapping, target: VarTable | None = None) -> "SuperPoly":
        """Apply the superalgebra homomorphism sending variables to polynomials.

        Keys of ``mapping`` are variable names or ids.  Variables not in the
        mapping are sent to the same-named variable of ``target`` (defaults to
        this table, or the table of the supplied images).
        """
        images: dict[int, SuperPoly] = {}
        for k, val in mapping.items():
            v = self.table.id(k) if isinstance(k, str) else k
            images[v] = val
        if target is None:
            target = next((p.table for p in images.values() if isinstance(p, SuperPoly)), self.table)
        for v, val in list(images.items()):
            if not isinstance(val, SuperPoly):
                val = target.const(val)
                images[v] = val
            elif val.table != target:
                raise ValueError("substitution images over different variable tables")
            par = val.parity()
            if val.terms and par != self.table.parities[v]:
                raise ValueError(
                    f"parity mismatch substituting {self.table.names[v]}: image parity {par}"
                )

        def image(v: int) -> SuperPoly:
            got = images.get(v)
            if got is None:
                got = target.var(self.table.names[v]) if target is not self.table else self.table.var(v)
                images[v] = got
            return got

        powers: dict[tuple[int, int], SuperPoly] = {}
        result: dict = {}
        acc = SuperPoly._trusted(target, result)
        for (evens, odds), c in self.terms.items():
            term = target.const(c)
            for v, k in evens:
                pw = powers.get((v, k))
                if pw is None:
                    pw = image(v) ** k
                    powers[(v, k)] = pw
                term = term * pw
                if not term.terms:
                    break
            else:
                for v in odds:
                    term = term * image(v)
                    if not term.terms:
                        break
            if term.terms:
                acc = acc + term
        return acc

    # decomposition --------------------------------------------------------
    def split_by(self, var_ids: Iterable[int]) -> dict[Monomial, "SuperPoly"]:
        """Write self = sum_m m * coeff_m with m a monomial in ``var_ids``.

        The monomial factor sits on the left; coefficients contain no
        variable from ``var_ids``.
        """
        chosen = set(var_ids)
        out: dict[Monomial, dict] = {}
        for (evens, odds), c in self.terms.items():
            e_in = tuple((v, k) for v, k in evens if v in chosen)
            e_out = tuple((v, k) for v, k in evens if v not in chosen)
            o_in = tuple(v for v in odds if v in chosen)
            o_out = tuple(v for v in odds if v not in chosen)
            # count transpositions needed to move the chosen odd vars leftwards
            inv = 0
            seen_out = 0
            for v in odds:
                if v in chosen:
                    inv += seen_out
                else:
                    seen_out += 1
            coeff = -c if inv & 1 else c
            bucket = out.setdefault((e_in, o_in), {})
            bucket[(e_out, o_out)] = coeff
        return {k: SuperPoly._trusted(self.table, v) for k, v in out.items()}

    def monomial_poly(self, key: Monomial) -> "SuperPoly":
        return SuperPoly._trusted(self.table, {key: ONE})

    # presentation ---------------------------------------------------------
    def format_monomial(self, key: Monomial) -> str:
        evens, odds = key
        parts = []
        for v, k in evens:
            parts.append(self.table.names[v] if k == 1 else f"{self.table.names[v]}^{k}")
        parts.extend(self.table.names[v] for v in odds)
        return "*".join(parts)

    def sorted_terms(self):
        def order(item):
            (evens, odds), _ = item
            deg = sum(k for _, k in evens) + len(odds)
            return (deg, evens, odds)
        return sorted(self.terms.items(), key=order)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            mono = self.format_monomial(key)
            cs = str(c)
            needs_paren = sum(1 for x in c.parts() if x) > 1
            if not mono:
                body = cs
            elif c == ONE:
                body = mono
            elif c == -ONE:
                body = "-" + mono
            elif needs_paren:
                body = f"({cs})*{mono}"
            else:
                body = f"{cs}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self):
        return f"SuperPoly({self})"

    def to_json(self):
        return [[self.format_monomial(k), c.to_json()] for k, c in self.sorted_terms()]


def supercommutator_sign(p: SuperPoly, q: SuperPoly) -> int:
    """(-1)^{|p||q|} for homogeneous operands."""
    a, b = p.parity(), q.parity()
    if a is None or b is None:
        raise ValueError("supercommutator sign needs homogeneous operands")
    return -1 if (a and b) else 1
