"""Supersymmetric cubic forms on W = C^{2|2}, the osp(2|2) action on W, and the
osculation pipeline that produces the second-order system with F(4) symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .jets import JetContext
from .linalg import ExactMatrix
from .scalar import ONE, ZERO, Scalar
from .superpoly import SuperPoly, VarTable

W_PARITY = (0, 0, 1, 1)
PARAMS = VarTable([("lambda1", 0), ("lambda2", 0), ("theta1", 1), ("theta2", 1),
                   ("mu1", 0), ("mu2", 0), ("phi1", 1), ("phi2", 1)])
T_NAMES = ("lambda1", "lambda2", "theta1", "theta2")
TSTAR_NAMES = ("mu1", "mu2", "phi1", "phi2")

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


def cubic_derivatives(C: SuperPoly, names: Sequence[str]):
    """(C_c, C_bc) with C_c = 1/3 d_c C and C_bc = 1/2 d_b C_c (left derivatives)."""
    first = [C.partial(n).scale(THIRD) for n in names]
    second = [[first[c].partial(names[b]).scale(HALF) for c in range(len(names))] for b in range(len(names))]
    return first, second


@dataclass
class CubicData:
    table: VarTable = PARAMS
    C: SuperPoly = field(init=False)
    Cstar: SuperPoly = field(init=False)

    def __post_init__(self):
        l1, l2, t1, t2, m1, m2, p1, p2 = (self.table.var(n) for n in T_NAMES + TSTAR_NAMES)
        self.C = l1 * l2 * l2 + (l2 * t1 * t2).scale(2)
        self.Cstar = m1 * m2 * m2 + m2 * p1 * p2
        self.C1, self.C2 = cubic_derivatives(self.C, T_NAMES)
        self.Cs1, self.Cs2 = cubic_derivatives(self.Cstar, TSTAR_NAMES)
        self.C3 = [[[self.C2[b][c].partial(T_NAMES[a]) for c in range(4)] for b in range(4)] for a in range(4)]

    @property
    def t(self) -> list[SuperPoly]:
        return [self.table.var(n) for n in T_NAMES]

    @property
    def tstar(self) -> list[SuperPoly]:
        return [self.table.var(n) for n in TSTAR_NAMES]

    def euler_checks(self) -> dict[str, bool]:
        """C = t^c C_c = t^c t^b C_bc = t^c t^b t^a C_abc."""
        t = self.t
        one = sum((t[c] * self.C1[c] for c in range(4)), self.table.zero())
        two = sum((t[c] * t[b] * self.C2[b][c] for b in range(4) for c in range(4)), self.table.zero())
        three = sum((t[c] * t[b] * t[a] * self.C3[a][b][c] for a in range(4) for b in range(4) for c in range(4)),
                    self.table.zero())
        return {"t^c C_c": one == self.C, "t^c t^b C_bc": two == self.C, "t^c t^b t^a C_abc": three == self.C}


def cubic_identity_residual(data: CubicData | None = None) -> SuperPoly:
    """C_b(T^2) C_a(T^2) (C*)^{ab}(T*) - 4/27 C(T^3) t^c t*_c."""
    d = data or CubicData()
    lhs = d.table.zero()
    for a in range(4):
        for b in range(4):
            lhs = lhs + d.C1[b] * d.C1[a] * d.Cs2[a][b]
    pair = sum((d.t[c] * d.tstar[c] for c in range(4)), d.table.zero())
    rhs = (d.C * pair).scale(Fraction(4, 27))
    return lhs - rhs


COMPARE_MONOMIAL = "lambda1^2*lambda2^2*mu1"


@dataclass
class IdentityReport:
    ok: bool
    residual: str
    even_restriction_ok: bool
    lhs_coefficient: Scalar
    rhs_coefficient: Scalar


def verify_cubic_identity() -> IdentityReport:
    d = CubicData()
    res = cubic_identity_residual(d)
    zero_odd = {n: d.table.zero() for n in ("theta1", "theta2", "phi1", "phi2")}
    even = res.substitute(zero_odd)
    # the identity is linear in T*, so compare a monomial that actually occurs
    lhs = d.table.zero()
    for a in range(4):
        for b in range(4):
            lhs = lhs + d.C1[b] * d.C1[a] * d.Cs2[a][b]
    key = d.table.parse(COMPARE_MONOMIAL)
    (mono,) = key.terms
    pair = sum((d.t[c] * d.tstar[c] for c in range(4)), d.table.zero())
    rhs = (d.C * pair).scale(Fraction(4, 27))
    return IdentityReport(res.is_zero(), str(res), even.is_zero(),
                          lhs.terms.get(mono, ZERO), rhs.terms.get(mono, ZERO))


# --- osp(2|2) on W ----------------------------------------------------------------------

Matrix = list  # 4x4 list of Scalars


def _m(entries: dict, n: int = 4) -> Matrix:
    out = [[ZERO] * n for _ in range(n)]
    for (i, j), v in entries.items():
        out[i][j] = Scalar.coerce(v)
    return out


def osp22_constants(c1) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    c1 = Scalar.coerce(c1)
    if not c1:
        raise ValueError("c1 must be nonzero")
    third = Scalar(Fraction(1, 3)) / c1
    return c1, c1 * 2, -third, third


OSP22_PARITY = {"h10": 0, "e10": 0, "f10": 0, "h01": 0, "e01": 1, "f01": 1, "e11": 1, "f11": 1}


def osp22_action(c1=1) -> dict[str, Matrix]:
    """The eight 4x4 matrices of the osp(2|2) action on W, rows/columns (w1, w2 | w3, w4)."""
    return osp22_matrices(*osp22_constants(c1))


def osp22_matrices(c1, c2, c3, c4) -> dict[str, Matrix]:
    """Same matrices with the four constants left free."""
    t = Fraction(-1, 3)
    return {
        "h10": _m({(2, 2): 1, (3, 3): -1}),
        "e10": _m({(2, 3): 1}),
        "f10": _m({(3, 2): 1}),
        "h01": _m({(0, 0): 2 * t, (1, 1): -t, (2, 2): 2 * t, (3, 3): -t}),
        "e01": _m({(0, 2): c2, (3, 1): c1}),
        "f01": _m({(1, 3): c4, (2, 0): c3}),
        "e11": _m({(0, 3): -c2, (2, 1): c1}),
        "f11": _m({(1, 2): -c4, (3, 0): c3}),
    }


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


def supercommutator(a: Matrix, b: Matrix, pa: int, pb: int) -> Matrix:
    ab, ba = mat_mul(a, b), mat_mul(b, a)
    sign = -1 if (pa and pb) else 1
    return [[ab[i][j] - ba[i][j] * sign for j in range(len(a))] for i in range(len(a))]


def _flat(m: Matrix) -> dict:
    return {(i, j): x for i, row in enumerate(m) for j, x in enumerate(row) if x}


def check_osp22(c1=1) -> list[tuple[str, bool]]:
    M = osp22_action(c1)
    P = OSP22_PARITY
    br = lambda a, b: supercommutator(M[a], M[b], P[a], P[b])
    out = [
        ("h10 = [e10, f10]", br("e10", "f10") == M["h10"]),
        ("h01 = [e01, f01]", br("e01", "f01") == M["h01"]),
        ("e11 = [e10, e01]", br("e10", "e01") == M["e11"]),
        ("f11 = [f10, f01]", br("f10", "f01") == M["f11"]),
    ]
    from .linalg import SpanSolver
    names = list(M)
    span = SpanSolver([_flat(M[n]) for n in names])
    closed = all(span.contains(_flat(br(a, b))) for a in names for b in names)
    out.append(("span of the 8 matrices is closed under supercommutators", closed and span.rank == 8))
    h = [[-M["h10"][i][j] * HALF - M["h01"][i][j] for j in range(4)] for i in range(4)]
    want = _m({(0, 0): Fraction(2, 3), (1, 1): Fraction(-1, 3), (2, 2): Fraction(1, 6), (3, 3): Fraction(1, 6)})
    out.append(("h = -1/2 h10 - h01 = diag(2/3,-1/3,1/6,1/6)", h == want))
    even = ["h10", "e10", "f10", "h01"]
    central = all(not _flat(supercommutator(h, M[n], 0, 0)) for n in even)
    out.append(("h is central in the even part (sl(2)+so(2))", central))
    return out


# --- actions on symmetric cubics ------------------------------------------------------

SW = VarTable([("w1", 0), ("w2", 0), ("w3", 1), ("w4", 1)])        # S(W), lower indices
SWD = VarTable([("W1", 0), ("W2", 0), ("W3", 1), ("W4", 1)])       # S(W*), upper indices w^a


def act_on_sym(A: Matrix, pA: int, p: SuperPoly, dual: bool) -> SuperPoly:
    """Extend A from W (or W*) to a superderivation of the symmetric algebra.

    On W: A w_j = sum_i A_ij w_i.  On W*: (A w^i) = -(-1)^{|A||i|} sum_j A_ij w^j.
    """
    table = p.table
    out = table.zero()
    for j in range(4):
        img = table.zero()
        if dual:
            s = -1 if (pA and W_PARITY[j]) else 1
            for k in range(4):
                if A[j][k]:
                    img = img + table.var(k).scale(-A[j][k] * s)
        else:
            for i in range(4):
                if A[i][j]:
                    img = img + table.var(i).scale(A[i][j])
        d = p.partial(j)
        if img and d:
            out = out + img * d
    return out


def even_cubic_basis(table: VarTable) -> list[SuperPoly]:
    return [table.parse(s.replace("w", table.names[0][0])) for s in
            ("w1^3", "w1^2*w2", "w1*w2^2", "w2^3", "w1*w3*w4", "w2*w3*w4")]


def invariant_cubics(c1=1, dual: bool = True) -> list[SuperPoly]:
    """Kernel of the osp(2|2) action on the even part of S^3 W* (dual=True) or S^3 W."""
    table = SWD if dual else SW
    basis = even_cubic_basis(table)
    M = osp22_action(c1)
    cols = []
    rows: dict = {}
    for b in basis:
        col = {}
        for name, A in M.items():
            img = act_on_sym(A, OSP22_PARITY[name], b, dual)
            for mono, c in img.terms.items():
                r = rows.setdefault((name, mono), len(rows))
                col[r] = c
        cols.append(col)
    ker = ExactMatrix.from_columns(len(rows), cols).kernel()
    out = []
    for v in ker:
        p = table.zero()
        for k, c in v.items():
            p = p + basis[k].scale(c)
        out.append(p)
    return out


def invariant_cubics_kernel(c1=1) -> tuple[int, int]:
    return len(invariant_cubics(c1, True)), len(invariant_cubics(c1, False))


def cubic_C() -> SuperPoly:
    return SWD.parse("W1*W2^2 - 2*W2*W3*W4")


def cubic_Cstar() -> SuperPoly:
    return SW.parse("w1*w2^2 - w2*w3*w4")


def proportional(p: SuperPoly, q: SuperPoly) -> bool:
    if not p or not q:
        return False
    key = next(iter(q.terms))
    if key not in p.terms:
        return False
    return p == q.scale(p.terms[key] / q.terms[key])


# --- osculation: the supervariety and the second-order system --------------------------

VAR_PARITY = (0, 0, 0, 1, 1, 0, 0, 1, 1, 0)  # basis v0..v9

_Y1 = {(1, 0): 1, (5, 2): 1, (9, 6): 1}
_Y2 = {(2, 0): 1, (5, 1): 1, (6, 2): 1, (7, 3): 1, (8, 4): 1, (9, 5): 1}
_TH1 = {(3, 0): 1, (5, 4): 1, (7, 2): 1, (9, 8): 1}
_TH2 = {(4, 0): 1, (5, 3): -1, (8, 2): 1, (9, 7): -1}
F_MINUS_ONE = {"Y1": (_Y1, 0), "Y2": (_Y2, 0), "Theta1": (_TH1, 1), "Theta2": (_TH2, 1)}

CSPO_BASIS = ((0, 1), (1, -1), (2, -1), (3, 1), (4, 1), (9, -1), (6, -1), (5, -1), (8, 1), (7, -1))

SUPERVAR_EXPECTED = ("1", "-lambda1", "-lambda2", "-theta1", "-theta2",
                     "-lambda1*lambda2^2/2 - lambda2*theta1*theta2", "-lambda2^2/2",
                     "-lambda1*lambda2 - theta1*theta2", "-lambda2*theta2", "lambda2*theta1")


def _pmat(entries: dict, coef: SuperPoly, n: int = 10) -> list[list[SuperPoly]]:
    z = coef.table.zero()
    out = [[z] * n for _ in range(n)]
    for (i, j), v in entries.items():
        out[i][j] = coef.scale(v)
    return out


def _pmul(a, b):
    n = len(a)
    z = a[0][0].table.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = z
            for k in range(n):
                if a[i][k] and b[k][j]:
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def _pident(table, n=10):
    return [[table.one() if i == j else table.zero() for j in range(n)] for i in range(n)]


def _padd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def exp_nilpotent(M, table) -> list:
    """Exact exponential of a nilpotent matrix with polynomial entries."""
    out = _pident(table, len(M))
    term = _pident(table, len(M))
    k = 0
    while True:
        k += 1
        term = _pmul(term, M)
        term = [[x.scale(Fraction(1, k)) for x in row] for row in term]
        if all(not x for row in term for x in row):
            return out
        out = _padd(out, term)


def check_f_minus_one_supercommute() -> bool:
    """The four 10x10 matrices supercommute pairwise."""
    t = PARAMS
    mats = {k: (_pmat(e, t.one()), p) for k, (e, p) in F_MINUS_ONE.items()}
    for a, (A, pa) in mats.items():
        for b, (B, pb) in mats.items():
            ab, ba = _pmul(A, B), _pmul(B, A)
            sign = -1 if (pa and pb) else 1
            if any(x - y.scale(sign) for r, s in zip(ab, ba) for x, y in zip(r, s)):
                return False
    return True


def supervariety_right_coordinates() -> list[SuperPoly]:
    """exp(theta2 Th2) exp(theta1 Th1) exp(lambda2 Y2) exp(lambda1 Y1) e_0 in the basis v0..v9."""
    t = PARAMS
    factors = [("theta2", _TH2), ("theta1", _TH1), ("lambda2", _Y2), ("lambda1", _Y1)]
    total = _pident(t)
    for name, entries in factors:
        total = _pmul(total, exp_nilpotent(_pmat(entries, t.var(name)), t))
    return [total[i][0] for i in range(10)]


def supervariety_left_coordinates() -> list[SuperPoly]:
    """Change to the CSpO basis, then move coefficients to the left with the sign rule."""
    right = supervariety_right_coordinates()
    out = []
    for k, (src, s) in enumerate(CSPO_BASIS):
        c = right[src].scale(s)
        if VAR_PARITY[src]:
            c = -c  # coefficient of an odd vector is odd; swapping sides costs a sign
        out.append(c)
    return out


def supervariety_from_cubic(d: CubicData | None = None) -> list[SuperPoly]:
    """(1, -t^a, -1/2 C(T^3), -3/2 C_a(T^2))."""
    d = d or CubicData()
    return ([d.table.one()] + [-x for x in d.t] + [d.C.scale(-HALF)]
            + [c.scale(Fraction(-3, 2)) for c in d.C1])


def lagrangian_frame(d: CubicData | None = None) -> list[list[SuperPoly]]:
    """Rows (X_0 | X_a | U^0 | U^a) spanning the affine tangent space, from the point and its t-derivatives.

    Row a = -d/dt^a (point); row 0 = point + sum_b t^b row_b.  Returned as 5 rows of
    10 coordinates in the frame (X0, X1..X4, U0, U1..U4).
    """
    d = d or CubicData()
    ell = supervariety_from_cubic(d)
    rows_a = [[-x.partial(T_NAMES[a]) for x in ell] for a in range(4)]
    row0 = list(ell)
    for b in range(4):
        row0 = [x + d.t[b] * y for x, y in zip(row0, rows_a[b])]
    return [row0] + rows_a


def second_order_matrix(d: CubicData | None = None) -> list[list[SuperPoly]]:
    """The 5x5 matrix (u_ij) = [[C, 3/2 C_b], [3/2 C_a, 3 C_ab]]."""
    d = d or CubicData()
    out = [[d.C] + [c.scale(Fraction(3, 2)) for c in d.C1]]
    for a in range(4):
        out.append([d.C1[a].scale(Fraction(3, 2))] + [d.C2[a][b].scale(3) for b in range(4)])
    return out


def matrix_from_frame(rows) -> list[list[SuperPoly]]:
    """Read u_ij off Lagrangian rows X_i + u_ij U^j (requires X-block = identity)."""
    for i, r in enumerate(rows):
        for j in range(5):
            want = ONE if i == j else ZERO
            if r[j].constant_value() != want:
                raise ValueError("frame rows are not in graph form")
    return [r[5:] for r in rows]


MIXED_PARITIES = (0, 0, 0, 1, 1)


def is_supersymmetric(M) -> bool:
    for i in range(5):
        for j in range(5):
            s = -1 if (MIXED_PARITIES[i] and MIXED_PARITIES[j]) else 1
            if M[i][j] != M[j][i].scale(s):
                return False
    return True


ELIMINATION = {"lambda1": "u22", "lambda2": "u12", "theta1": "-u24", "theta2": "u23"}

SECOND_ORDER_PRINTED = (
    ("u00", "u22*u12^2 + 2*u12*u23*u24"),
    ("u01", "u12^2/2"),
    ("u02", "u22*u12 + u23*u24"),
    ("u03", "u12*u23"),
    ("u04", "u12*u24"),
    ("u11", "0"),
    ("u12", "-u34"),
    ("u13", "0"),
    ("u14", "0"),
)


def second_order_context() -> JetContext:
    return JetContext(MIXED_PARITIES, 2)


def generate_second_order_system(ctx: JetContext | None = None) -> dict[str, SuperPoly]:
    """Eliminate the parameters from the 5x5 matrix; return the 9 equations lhs -> rhs.

    The entries defining the parameters (u22, u12, u23, u24) are consumed by the
    elimination; u34 = -lambda2 is rewritten as u12 = -u34, the form printed in
    the literature.
    """
    ctx = ctx or second_order_context()
    M = matrix_from_frame(lagrangian_frame())
    sub = {k: ctx.parse(v) for k, v in ELIMINATION.items()}
    target = ctx.table
    params = {n: sub[n] for n in T_NAMES}
    eqs: dict[str, SuperPoly] = {}
    consumed = {"u22", "u12", "u23", "u24"}
    for (i, j) in ctx.pairs:
        name = ctx.name((i, j))
        val = M[i][j].substitute(params, target=target)
        if name in consumed:
            if val != ctx.var(name):
                raise AssertionError(f"parametrisation of {name} is inconsistent")
            continue
        if name == "u34":
            # u34 = -u12  <=>  u12 = -u34
            if val != -ctx.var("u12"):
                raise AssertionError("unexpected u34 entry")
            eqs["u12"] = -ctx.var("u34")
            continue
        eqs[name] = val
    order = [lhs for lhs, _ in SECOND_ORDER_PRINTED]
    return {k: eqs[k] for k in order if k in eqs} | {k: v for k, v in eqs.items() if k not in order}


def printed_second_order_system(ctx: JetContext | None = None) -> dict[str, SuperPoly]:
    ctx = ctx or second_order_context()
    return {lhs: ctx.parse(rhs) for lhs, rhs in SECOND_ORDER_PRINTED}


def solved_second_order_system(ctx: JetContext | None = None) -> dict[str, SuperPoly]:
    """Solved form with free second-order coordinates u22, u34, u23, u24 (u12 -> -u34)."""
    ctx = ctx or second_order_context()
    eqs = generate_second_order_system(ctx)
    rule = {"u12": -ctx.var("u34")}
    return {k: (v if k == "u12" else v.substitute(rule)) for k, v in eqs.items()}


def cubicforms_summary() -> list[tuple[str, bool, object, object]]:
    res = []
    rep = verify_cubic_identity()
    res.append(("cubic identity LHS - RHS == 0", rep.ok, "0", rep.residual))
    res.append(("cubic identity with odd parameters set to 0", rep.even_restriction_ok, True, rep.even_restriction_ok))
    res.append((f"coefficient of {COMPARE_MONOMIAL} equal on both sides",
                rep.lhs_coefficient == rep.rhs_coefficient and bool(rep.lhs_coefficient),
                str(rep.rhs_coefficient), str(rep.lhs_coefficient)))
    for k, v in CubicData().euler_checks().items():
        res.append((f"C(T^3) = {k}", v, True, v))
    for name, ok in check_osp22(1):
        res.append((f"osp(2|2): {name}", ok, True, ok))
    for c1 in (1, 2, Fraction(-1, 3)):
        dims = invariant_cubics_kernel(c1)
        res.append((f"invariant cubic kernels (c1={c1})", dims == (1, 1), (1, 1), dims))
    (kd,), (kw,) = invariant_cubics(1, True), invariant_cubics(1, False)
    res.append(("S^3 W* invariant spanned by w^1(w^2)^2 - 2w^2w^3w^4", proportional(kd, cubic_C()),
                str(cubic_C()), str(kd)))
    res.append(("S^3 W invariant spanned by w_1(w_2)^2 - w_2w_3w_4", proportional(kw, cubic_Cstar()),
                str(cubic_Cstar()), str(kw)))
    res.append(("f_-1 matrices supercommute", check_f_minus_one_supercommute(), True, None))
    left = supervariety_left_coordinates()
    want = [PARAMS.parse(s) for s in SUPERVAR_EXPECTED]
    res.append(("supervariety left coordinates", left == want, list(SUPERVAR_EXPECTED), [str(x) for x in left]))
    res.append(("supervariety = (1, -t, -C/2, -3/2 C_a)", left == supervariety_from_cubic(), True, None))
    M = matrix_from_frame(lagrangian_frame())
    res.append(("Lagrangian frame reproduces the 5x5 parametric matrix", M == second_order_matrix(), True, None))
    res.append(("5x5 matrix is supersymmetric", is_supersymmetric(M), True, None))
    gen = generate_second_order_system()
    printed = printed_second_order_system()
    res.append(("generated second-order system equals the printed 9 equations", gen == printed,
                {k: str(v) for k, v in printed.items()}, {k: str(v) for k, v in gen.items()}))
    return res


def supervariety_and_osculation(ctx: JetContext | None = None) -> tuple[list[SuperPoly], dict[str, SuperPoly]]:
    """The parametrised supervariety and the solved second-order system it osculates."""
    return supervariety_left_coordinates(), solved_second_order_system(ctx)
