"""F(4) as explicit structure constants built from the spinorial presentation.

Basis order: the degree -2 generator ``1``, the eight spinors, 21 elements of
so(V), the grading element ``Z``, the eight daggered spinors and ``1+``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

from . import clifford as cl
from . import rootkit as rk
from .linalg import ExactMatrix, SpanSolver, rank as vrank, vec_add
from .scalar import ONE, ZERO, Scalar

Vec = dict  # sparse vector: basis index -> Scalar


@dataclass(frozen=True)
class BasisElement:
    name: str
    parity: int
    degree: int


class SuperLieAlgebra:
    """Finite-dimensional Lie superalgebra given by structure constants.

    ``table[(i, j)]`` is the sparse vector [b_i, b_j]; absent pairs bracket to 0.
    """

    def __init__(self, basis: Sequence[BasisElement], table: Mapping[tuple[int, int], Vec],
                 cartan: Sequence[int] = (), meta: dict | None = None):
        self.basis = tuple(basis)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.cartan = tuple(cartan)
        self.meta = dict(meta or {})
        self.index = {b.name: i for i, b in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> tuple[int, int]:
        e = sum(1 for b in self.basis if b.parity == 0)
        return e, len(self.basis) - e

    def parity(self, i: int) -> int:
        return self.basis[i].parity

    def degree(self, i: int) -> int:
        return self.basis[i].degree

    def elem(self, name: str) -> Vec:
        return {self.index[name]: ONE}

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.table.get((i, j), {})

    def bracket(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                r = self.table.get((i, j))
                if r:
                    out = vec_add(out, r, a * b)
        return out

    def dims_by_degree(self) -> dict[int, tuple[int, int]]:
        out: dict = {}
        for b in self.basis:
            e, o = out.get(b.degree, (0, 0))
            out[b.degree] = (e + 1, o) if b.parity == 0 else (e, o + 1)
        lo, hi = min(out), max(out)
        return {k: out.get(k, (0, 0)) for k in range(lo, hi + 1)}

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.degree == d]

    def regraded(self, degrees: Sequence[int], meta: dict | None = None) -> "SuperLieAlgebra":
        basis = [BasisElement(b.name, b.parity, d) for b, d in zip(self.basis, degrees)]
        return SuperLieAlgebra(basis, self.table, self.cartan, {**self.meta, **(meta or {})})

    def to_json(self) -> str:
        doc = {
            "basis": [{"name": b.name, "parity": b.parity, "degree": b.degree} for b in self.basis],
            "brackets": [
                {"i": i, "j": j, "value": [[k, c.to_json()] for k, c in sorted(v.items())]}
                for (i, j), v in sorted(self.table.items())
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# --- construction ---------------------------------------------------------------------

def _matrix_vector(m: cl.Mat) -> dict:
    return {(i, j): x for i, row in enumerate(m) for j, x in enumerate(row) if x}


class _SoSolver:
    """Coordinates of an 8x8 matrix in the so(V) basis (via its spin matrices)."""

    def __init__(self):
        self.so = cl.so_basis()
        self.solver = SpanSolver([_matrix_vector(e.spin_matrix) for e in self.so])

    def coords(self, m: cl.Mat) -> dict:
        c = self.solver.express(_matrix_vector(m))
        if c is None:
            raise ValueError("matrix is not in the spin image of so(V)")
        return c


def omega2_spin_action(s: Sequence, t: Sequence) -> cl.Mat:
    """sigma(omega2(s,t)) = 1/2 sum_{mu<nu} <s, G_mu G_nu t> G_mu G_nu."""
    w = cl.omega_p(2, s, t)
    return cl.mat_scale(w.to_matrix(), Fraction(1, 2))


def build_f4() -> SuperLieAlgebra:
    so = cl.so_basis()
    solver = _SoSolver()
    n_so = len(so)
    ONE_ = 0
    S0 = 1
    SO0 = 9
    Z = SO0 + n_so
    SD0 = Z + 1
    ONED = SD0 + 8
    basis = [BasisElement("1", 0, -2)]
    basis += [BasisElement(n, 1, -1) for n in cl.SPIN_NAMES]
    basis += [BasisElement(e.name, 0, 0) for e in so]
    basis += [BasisElement("Z", 0, 0)]
    basis += [BasisElement(n + "+", 1, 1) for n in cl.SPIN_NAMES]
    basis += [BasisElement("1+", 0, 2)]
    table: dict = {}

    def put(i, j, vec):
        vec = {k: v for k, v in vec.items() if v}
        if not vec:
            return
        table[(i, j)] = vec
        # super-antisymmetry: [b_j, b_i] = -(-1)^{|i||j|} [b_i, b_j]
        sign = ONE if (basis[i].parity and basis[j].parity) else -ONE
        if (j, i) != (i, j):
            table[(j, i)] = {k: v * sign for k, v in vec.items()}

    pm = cl.pairing_matrix()
    for a, b in product(range(8), repeat=2):
        p = pm[a][b]
        if p:
            put(S0 + a, S0 + b, {ONE_: p})
            put(SD0 + a, SD0 + b, {ONED: p})
    for a in range(8):
        put(SD0 + a, ONE_, {S0 + a: ONE})
        put(ONED, S0 + a, {SD0 + a: ONE})
    put(ONED, ONE_, {Z: -ONE})
    # g0 acting naturally
    for k, e in enumerate(so):
        m = e.spin_matrix
        for a in range(8):
            col = {S0 + r: m[r][a] for r in range(8) if m[r][a]}
            put(SO0 + k, S0 + a, col)
            put(SO0 + k, SD0 + a, {SD0 + r - S0: v for r, v in col.items()})
        for l in range(k + 1, n_so):
            c = solver.coords(cl.commutator(m, so[l].spin_matrix))
            put(SO0 + k, SO0 + l, {SO0 + q: v for q, v in c.items()})
    for i, b in enumerate(basis):
        if b.degree:
            put(Z, i, {i: Scalar(b.degree)})
    # [s+, t] = 1/3 omega2(s,t) - 1/2 <s,t> Z
    for a, b in product(range(8), repeat=2):
        s, t = cl.basis_spinor(a), cl.basis_spinor(b)
        c = solver.coords(cl.mat_scale(omega2_spin_action(s, t), Fraction(1, 3)))
        vec = {SO0 + q: v for q, v in c.items()}
        p = pm[a][b]
        if p:
            vec[Z] = vec.get(Z, ZERO) - p * Fraction(1, 2)
        put(SD0 + a, S0 + b, vec)
    cartan = [SO0 + k for k, e in enumerate(so) if e.name.startswith("H")] + [Z]
    return SuperLieAlgebra(basis, table, cartan, {"grading": "odd contact (I,{1})"})


# --- verification -----------------------------------------------------------------------

@dataclass
class JacobiReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def jacobi_residual(L: SuperLieAlgebra, x: int, y: int, z: int) -> Vec:
    px, py, pz = L.parity(x), L.parity(y), L.parity(z)
    out: dict = {}
    for (a, b, c, pa, pc) in ((x, y, z, px, pz), (y, z, x, py, px), (z, x, y, pz, py)):
        inner = L.bracket_basis(b, c)
        if not inner:
            continue
        term = L.bracket({a: ONE}, inner)
        out = vec_add(out, term, -ONE if (pa and pc) else ONE)
    return out


def verify_super_jacobi(L: SuperLieAlgebra, triples: Iterable[tuple[int, int, int]] | None = None) -> JacobiReport:
    n = len(L)
    if triples is None:
        triples = product(range(n), repeat=3)
    failures = []
    count = 0
    for x, y, z in triples:
        count += 1
        if jacobi_residual(L, x, y, z):
            failures.append((L.basis[x].name, L.basis[y].name, L.basis[z].name))
    return JacobiReport(count, failures)


def check_super_antisymmetry(L: SuperLieAlgebra) -> bool:
    for (i, j), v in L.table.items():
        sign = ONE if (L.parity(i) and L.parity(j)) else -ONE
        back = L.table.get((j, i), {})
        if back != {k: x * sign for k, x in v.items()}:
            return False
    return True


def check_degrees(L: SuperLieAlgebra) -> list[tuple[str, str]]:
    """Pairs whose bracket leaves the degree k+l or the parity |x|+|y|."""
    bad = []
    for (i, j), v in L.table.items():
        d = L.degree(i) + L.degree(j)
        p = (L.parity(i) + L.parity(j)) % 2
        for k in v:
            if L.degree(k) != d or L.parity(k) != p:
                bad.append((L.basis[i].name, L.basis[j].name))
                break
    return bad


# --- roots and gradings -----------------------------------------------------------------

def root_decomposition(L: SuperLieAlgebra) -> dict:
    """Map each basis element to its weight over (eps1, eps2, eps3, delta).

    Uses delta(Z) = 2, eps_i(Z) = 0 and eps_j(H_k) = delta_jk.  Cartan
    elements get the zero weight.  Raises if some basis vector is not an
    eigenvector of the Cartan subalgebra.
    """
    *hs, z = L.cartan
    weights = {}
    for i in range(len(L)):
        eig = []
        for h in hs + [z]:
            v = L.bracket_basis(h, i)
            if not v:
                eig.append(Fraction(0))
                continue
            if set(v) != {i} or not v[i].is_rational():
                raise ValueError(f"{L.basis[i].name} is not a rational weight vector")
            eig.append(v[i].a)
        weights[i] = (eig[0], eig[1], eig[2], eig[3] / 2)
    return weights


def check_root_decomposition(L: SuperLieAlgebra) -> tuple[bool, dict]:
    weights = root_decomposition(L)
    roots: dict = {}
    zero = 0
    for i, wt in weights.items():
        if any(wt):
            roots.setdefault(wt, []).append(i)
        else:
            zero += 1
    ok = zero == 4 and all(len(v) == 1 for v in roots.values())
    ok = ok and set(roots) == set(rk.ALL_ROOTS)
    ok = ok and all((L.parity(v[0]) == 1) == rk.is_odd(r) for r, v in roots.items())
    return ok, {"root_spaces": len(roots), "cartan_dim": zero}


def grading_element(pi: rk.SimpleSystem, subset: Sequence[int]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coordinates (a1, a2, a3, b) of Zgr = sum a_k H_k + b Z with alpha_i(Zgr) = [i in subset]."""
    rows = [[a[0], a[1], a[2], 2 * a[3]] for a in pi.roots]
    rhs = [Fraction(1) if i + 1 in subset else Fraction(0) for i in range(4)]
    sol = rk._solve4(rows, rhs)
    if sol is None:
        raise ValueError("singular simple system")
    return tuple(sol)


def regrade(L: SuperLieAlgebra, pi: rk.SimpleSystem, subset: Sequence[int]) -> SuperLieAlgebra:
    """Regrade by the eigenvalues of the grading element attached to (pi, subset)."""
    coeffs = grading_element(pi, subset)
    *hs, z = L.cartan
    zgr: dict = {}
    for idx, c in zip(hs + [z], coeffs):
        if c:
            zgr[idx] = Scalar(c)
    degrees = []
    for i in range(len(L)):
        v = L.bracket(zgr, {i: ONE})
        if not v:
            degrees.append(0)
            continue
        if set(v) != {i} or not v[i].is_rational() or v[i].a.denominator != 1:
            raise ValueError(f"{L.basis[i].name} has no integral eigenvalue under the grading element")
        degrees.append(int(v[i].a))
    label = rk.identify(pi) or "custom"
    return L.regraded(degrees, {"grading": f"({label},{{{','.join(map(str, subset))}}})",
                                "grading_element": [str(c) for c in coeffs]})


def mixed_grading(L: SuperLieAlgebra) -> SuperLieAlgebra:
    return regrade(L, rk.simple_system("VI"), (4,))


def _kernel_dims(L: SuperLieAlgebra, domain: Sequence[int], targets: Sequence[int]) -> tuple[int, int, list]:
    """Kernel of x -> ([x, t])_t over the span of ``domain``, split by parity."""
    n = len(L)
    dims = []
    basis = []
    for parity in (0, 1):
        dom = [i for i in domain if L.parity(i) == parity]
        cols = []
        for i in dom:
            col = {}
            for k, t in enumerate(targets):
                for r, v in L.bracket_basis(i, t).items():
                    col[k * n + r] = v
            cols.append(col)
        m = ExactMatrix.from_columns(n * len(targets), cols) if cols else None
        ker = m.kernel() if m is not None else []
        dims.append(len(ker))
        basis += [{dom[c]: v for c, v in vec.items()} for vec in ker]
    return dims[0], dims[1], basis


def centralizer(L: SuperLieAlgebra, subspace: Sequence[int], within: Sequence[int] | None = None):
    """Centralizer of span(basis[subspace]) inside span(basis[within]) (default: all of L)."""
    within = list(range(len(L))) if within is None else list(within)
    e, o, basis = _kernel_dims(L, within, subspace)
    return (e, o), basis


def bracket_generation_ok(L: SuperLieAlgebra) -> bool:
    g1 = L.indices_of_degree(-1)
    g2 = L.indices_of_degree(-2)
    vecs = [L.bracket_basis(i, j) for i in g1 for j in g1]
    span = vrank(vecs)
    inside = all(set(v) <= set(g2) for v in vecs)
    return inside and span == len(g2)


def transitivity_ok(L: SuperLieAlgebra) -> bool:
    p = [i for i in range(len(L)) if L.degree(i) >= 0]
    (e, o), _ = centralizer(L, L.indices_of_degree(-1), p)
    return e == 0 and o == 0


# --- Freudenthal-type identity ----------------------------------------------------------

def freudenthal_check(L: SuperLieAlgebra) -> dict:
    """Alternating 4-fold bracket of 1+ with spinors against c * Q(s1..s4) * 1."""
    q = cl.cayley_quartic()
    one_d = L.index["1+"]
    one = L.index["1"]
    s0 = L.index["phi0"]
    c = None
    bad = []
    checked = 0
    for quad in combinations(range(8), 4):
        total = ZERO
        for perm in permutations(quad):
            v = {one_d: ONE}
            for a in perm:
                v = L.bracket(v, {s0 + a: ONE})
                if not v:
                    break
            if not v:
                continue
            if set(v) != {one}:
                bad.append(quad)
                break
            sign = cl._perm_sign(perm)
            total = total + (v[one] if sign > 0 else -v[one])
        total = total / 24
        checked += 1
        qv = q.value(quad)
        if qv:
            ratio = total / qv
            if c is None:
                c = ratio
            elif ratio != c:
                bad.append(quad)
        elif total:
            bad.append(quad)
    return {"ok": not bad and c is not None, "constant": c, "checked": checked, "failures": bad}


# --- summary -----------------------------------------------------------------------------

def f4_summary(L: SuperLieAlgebra | None = None, jacobi: bool = True) -> list[tuple[str, bool, object, object]]:
    L = L or build_f4()
    res = []
    res.append(("dim F(4) = (24|16)", L.dim == (24, 16), (24, 16), L.dim))
    res.append(("super-antisymmetry of the table", check_super_antisymmetry(L), True, check_super_antisymmetry(L)))
    if jacobi:
        rep = verify_super_jacobi(L)
        res.append((f"super-Jacobi on all {rep.checked} basis triples", rep.ok and rep.checked == 64000,
                    [], rep.failures[:5]))
    ok, info = check_root_decomposition(L)
    res.append(("root decomposition: 36 root spaces + 4-dim Cartan", ok, {"root_spaces": 36, "cartan_dim": 4}, info))
    odd = L
    want_odd = {-2: (1, 0), -1: (0, 8), 0: (22, 0), 1: (0, 8), 2: (1, 0)}
    res.append(("odd contact grading dims", odd.dims_by_degree() == want_odd, want_odd, odd.dims_by_degree()))
    again = regrade(L, rk.simple_system("I"), (1,))
    res.append(("(I,{1}) regrade recovers the construction grading",
                [b.degree for b in again.basis] == [b.degree for b in L.basis], True,
                [b.degree for b in again.basis] == [b.degree for b in L.basis]))
    mixed = mixed_grading(L)
    want_mixed = {-2: (1, 0), -1: (6, 4), 0: (10, 8), 1: (6, 4), 2: (1, 0)}
    res.append(("mixed contact grading dims", mixed.dims_by_degree() == want_mixed, want_mixed,
                mixed.dims_by_degree()))
    p12 = regrade(L, rk.simple_system("I"), (1, 2))
    _, want_p12 = rk.grading_dims(rk.GradingSpec(rk.simple_system("I"), (1, 2)))
    res.append(("(I,{1,2}) regrade matches the root-count dims", p12.dims_by_degree() == want_p12, want_p12,
                p12.dims_by_degree()))
    for name, G in (("odd", odd), ("mixed", mixed), ("p12", p12)):
        bad = check_degrees(G)
        res.append((f"brackets respect the {name} grading", not bad, [], bad[:3]))
    for name, G in (("odd", odd), ("mixed", mixed)):
        res.append((f"[g-1, g-1] = g-2 ({name})", bracket_generation_ok(G), True, bracket_generation_ok(G)))
        res.append((f"transitivity ({name})", transitivity_ok(G), True, transitivity_ok(G)))
    m = mixed.indices_of_degree(-1) + mixed.indices_of_degree(-2)
    dims, _ = centralizer(mixed, m, [i for i in range(len(mixed)) if mixed.degree(i) < 0])
    res.append(("centralizer of m in m (mixed) = center", dims == (1, 0), (1, 0), dims))
    g1_even = [i for i in mixed.indices_of_degree(-1) if mixed.parity(i) == 0]
    dims, _ = centralizer(mixed, g1_even)
    res.append(("centralizer of (m-1)_even (mixed)", dims == (4, 4), (4, 4), dims))
    dims, _ = centralizer(L, list(range(len(L))))
    res.append(("centre of F(4)", dims == (0, 0), (0, 0), dims))
    return res
