"""The 7-dimensional Clifford algebra, its (0|8) spin module and the Cayley 4-form.

Conventions
-----------
* V has split basis ``(e1, e2, e3, R, f3, f2, f1)`` with g(e_j, f_j) = 1 and
  g(R, R) = 1.
* The spin module is the exterior algebra of E* = span(e^1, e^2, e^3) with
  e.phi = -sqrt2 * contraction, f_j.phi = sqrt2 * e^j wedge phi and
  R.phi = +i phi on even forms, -i phi on odd forms.
* Spinor basis ``(phi0, phi1, phi2, phi3, psi0, psi1, psi2, psi3)`` is
  ``(1, e^1, e^2, e^3, -e^123, e^23, e^31, e^12)``; the pairing is
  <phi_i, psi_j> = delta_ij, symmetric, with phi/phi and psi/psi pairings zero.
* The orthonormal frame is ``(n1, m1, n2, m2, n3, m3, R)`` with
  n_j = (e_j + f_j)/sqrt2 and m_j = (e_j - f_j)/(i sqrt2).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Sequence

from .linalg import ExactMatrix
from .scalar import I, ONE, SQRT2, ZERO, Scalar

DIM_V = 7
DIM_S = 8
SPLIT_NAMES = ("e1", "e2", "e3", "R", "f3", "f2", "f1")
SPIN_NAMES = ("phi0", "phi1", "phi2", "phi3", "psi0", "psi1", "psi2", "psi3")
FRAME_NAMES = ("n1", "m1", "n2", "m2", "n3", "m3", "R")

Mat = tuple  # 8x8 (or 7x7) tuple of tuples of Scalar
Spinor = tuple  # 8-tuple of Scalar

HALF = Scalar(Fraction(1, 2))


# --- small dense matrix helpers ----------------------------------------------

def zeros(n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = a[i]
        acc = [ZERO] * m
        for t in range(k):
            x = row[t]
            if not x:
                continue
            brow = b[t]
            for j in range(m):
                y = brow[j]
                if y:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Mat, c) -> Mat:
    c = Scalar.coerce(c)
    return tuple(tuple(x * c for x in r) for r in a)


def mat_apply(a: Mat, v: Sequence[Scalar]) -> Spinor:
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return tuple(out)


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def is_zero_mat(a: Mat) -> bool:
    return all(not x for r in a for x in r)


def basis_spinor(k: int) -> Spinor:
    return tuple(ONE if i == k else ZERO for i in range(DIM_S))


def vec_lin(*pairs) -> tuple:
    """Linear combination of equal-length Scalar tuples: vec_lin((c1, v1), (c2, v2), ...)."""
    n = len(pairs[0][1])
    acc = [ZERO] * n
    for c, v in pairs:
        c = Scalar.coerce(c)
        for i, x in enumerate(v):
            if x:
                acc[i] = acc[i] + c * x
    return tuple(acc)


# --- metric and split-basis model ---------------------------------------------

def metric(a: int, b: int) -> Scalar:
    """g on the split basis: g(b_a, b_b) = 1 iff a + b == 6."""
    return ONE if a + b == DIM_V - 1 else ZERO


# forms on E* are keyed by ascending tuples drawn from (1, 2, 3)
_FORM_OF_SPIN = (
    {(): ONE}, {(1,): ONE}, {(2,): ONE}, {(3,): ONE},
    {(1, 2, 3): -ONE}, {(2, 3): ONE}, {(1, 3): -ONE}, {(1, 2): ONE},
)


def _spin_coords(form: dict) -> Spinor:
    out = [ZERO] * DIM_S
    for k, c in form.items():
        for idx, f in enumerate(_FORM_OF_SPIN):
            if k in f:
                out[idx] = out[idx] + c / f[k]
                break
    return tuple(out)


def _act_split_on_form(a: int, form: dict) -> dict:
    out: dict = {}

    def put(key, c):
        v = out.get(key, ZERO) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for key, c in form.items():
        if a < 3:  # e_j: -sqrt2 * contraction with e_j
            j = a + 1
            if j in key:
                pos = key.index(j)
                sign = -ONE if pos % 2 else ONE
                put(key[:pos] + key[pos + 1:], -SQRT2 * sign * c)
        elif a == 3:  # R
            put(key, (I if len(key) % 2 == 0 else -I) * c)
        else:  # f_j, a = 7 - j
            j = DIM_V - a
            if j not in key:
                before = sum(1 for x in key if x < j)
                sign = -ONE if before % 2 else ONE
                put(tuple(sorted(key + (j,))), SQRT2 * sign * c)
    return out


@lru_cache(maxsize=None)
def split_matrices() -> tuple[Mat, ...]:
    """Clifford action of the split basis (e1, e2, e3, R, f3, f2, f1) on the spinor basis."""
    mats = []
    for a in range(DIM_V):
        cols = [_spin_coords(_act_split_on_form(a, f)) for f in _FORM_OF_SPIN]
        mats.append(tuple(tuple(cols[j][i] for j in range(DIM_S)) for i in range(DIM_S)))
    return tuple(mats)


def clifford_act(v: Sequence, s: Sequence) -> Spinor:
    """Clifford multiplication of a vector (split-basis coordinates) on a spinor."""
    out = tuple(ZERO for _ in range(DIM_S))
    for a, c in enumerate(v):
        c = Scalar.coerce(c)
        if c:
            out = vec_lin((ONE, out), (c, mat_apply(split_matrices()[a], [Scalar.coerce(x) for x in s])))
    return out


def pairing(s: Sequence[Scalar], t: Sequence[Scalar]) -> Scalar:
    """Symmetric pairing <phi_i, psi_j> = delta_ij."""
    acc = ZERO
    for i in range(4):
        if s[i] and t[4 + i]:
            acc = acc + s[i] * t[4 + i]
        if s[4 + i] and t[i]:
            acc = acc + s[4 + i] * t[i]
    return acc


def pairing_matrix() -> Mat:
    return tuple(tuple(ONE if (i - j) % 8 == 4 else ZERO for j in range(DIM_S)) for i in range(DIM_S))


# --- orthonormal frame ------------------------------------------------------------

def _frame_in_split() -> list[tuple]:
    inv_sqrt2 = SQRT2.inverse()
    inv_isqrt2 = (I * SQRT2).inverse()
    frame = []
    for j in range(3):
        e, f = j, DIM_V - 1 - j
        n = [ZERO] * DIM_V
        m = [ZERO] * DIM_V
        n[e], n[f] = inv_sqrt2, inv_sqrt2
        m[e], m[f] = inv_isqrt2, -inv_isqrt2
        frame += [tuple(n), tuple(m)]
    r = [ZERO] * DIM_V
    r[3] = ONE
    frame.append(tuple(r))
    return frame


@dataclass(frozen=True)
class GammaSystem:
    frame: tuple  # 7 vectors in split coordinates
    gammas: tuple  # 7 EndS matrices
    flipped: int | None  # index of the generator whose sign was flipped, if any
    identification: str


def _lin_mats(coeffs: Sequence[Scalar], mats: Sequence[Mat]) -> Mat:
    acc = zeros(DIM_S)
    for c, m in zip(coeffs, mats):
        if c:
            acc = mat_add(acc, mat_scale(m, c))
    return acc


@lru_cache(maxsize=None)
def gamma_system() -> GammaSystem:
    frame = _frame_in_split()
    mats = split_matrices()
    gammas = [_lin_mats(v, mats) for v in frame]
    vol = identity(DIM_S)
    for g in gammas:
        vol = mat_mul(vol, g)
    flipped = None
    if vol != mat_scale(identity(DIM_S), -1):
        # opposite module: flip the sign of the last generator (R)
        flipped = DIM_V - 1
        gammas[flipped] = mat_scale(gammas[flipped], -1)
        frame[flipped] = tuple(-x for x in frame[flipped])
    ident = (
        "Gamma_(1..7) = (n1, m1, n2, m2, n3, m3, R) with n_j = (e_j+f_j)/sqrt2, "
        "m_j = (e_j-f_j)/(i sqrt2)"
        + ("" if flipped is None else f"; sign of Gamma_{flipped + 1} flipped to make vol = -Id")
    )
    return GammaSystem(tuple(frame), tuple(gammas), flipped, ident)


def gamma_matrices() -> tuple[Mat, ...]:
    return gamma_system().gammas


def volume_element() -> Mat:
    vol = identity(DIM_S)
    for g in gamma_matrices():
        vol = mat_mul(vol, g)
    return vol


@lru_cache(maxsize=None)
def gamma_product(subset: tuple[int, ...]) -> Mat:
    """Gamma_A for an ascending tuple of 0-based frame indices."""
    out = identity(DIM_S)
    gs = gamma_matrices()
    for k in subset:
        out = mat_mul(out, gs[k])
    return out


def subsets(p: int) -> list[tuple[int, ...]]:
    return list(combinations(range(DIM_V), p))


# --- multivectors and the bilinear maps omega^(p) --------------------------------

@dataclass(frozen=True)
class Multivector:
    """Element of Lambda V in the orthonormal frame: ascending subset -> coefficient."""
    coeffs: tuple  # sorted tuple of (subset, Scalar) with nonzero coefficients

    @classmethod
    def from_dict(cls, d: dict) -> "Multivector":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def grade(self, p: int) -> "Multivector":
        return Multivector(tuple((k, v) for k, v in self.coeffs if len(k) == p))

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c) -> "Multivector":
        c = Scalar.coerce(c)
        return Multivector.from_dict({k: v * c for k, v in self.coeffs})

    def __add__(self, other: "Multivector") -> "Multivector":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, ZERO) + v
        return Multivector.from_dict(d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def to_matrix(self) -> Mat:
        """Clifford-algebra action: sum_A c_A Gamma_A."""
        acc = zeros(DIM_S)
        for k, v in self.coeffs:
            acc = mat_add(acc, mat_scale(gamma_product(k), v))
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*G{''.join(str(i + 1) for i in k) or '()'}" for k, v in self.coeffs)


def omega_p(p: int, s: Sequence, t: Sequence) -> Multivector:
    """omega^(p)(s, t) = sum_{|A|=p} <s, Gamma_A t> Gamma_A."""
    if p not in (0, 1, 2, 3):
        raise ValueError("omega_p is defined for grades 0..3")
    s = [Scalar.coerce(x) for x in s]
    t = [Scalar.coerce(x) for x in t]
    return Multivector.from_dict({A: pairing(s, mat_apply(gamma_product(A), t)) for A in subsets(p)})


def outer(s: Sequence, t: Sequence) -> Mat:
    """The endomorphism s tbar: u -> <t, u> s."""
    return tuple(tuple(Scalar.coerce(s[i]) * Scalar.coerce(t[(j + 4) % 8]) for j in range(DIM_S)) for i in range(DIM_S))


# --- so(V) and its spin representation --------------------------------------------

@dataclass(frozen=True)
class SoBasisElement:
    name: str
    pair: tuple[int, int]  # split-basis indices (a, b) meaning scale * (b_a wedge b_b)
    scale: Scalar
    vector_matrix: Mat  # 7x7 action on V (split basis)
    spin_matrix: Mat  # 8x8 action on S


def wedge_vector_matrix(a: int, b: int) -> Mat:
    """v wedge w acting on V by u -> g(v,u) w - g(w,u) v, in the split basis."""
    rows = [[ZERO] * DIM_V for _ in range(DIM_V)]
    for u in range(DIM_V):
        gv = metric(a, u)
        gw = metric(b, u)
        if gv:
            rows[b][u] = rows[b][u] + gv
        if gw:
            rows[a][u] = rows[a][u] - gw
    return tuple(tuple(r) for r in rows)


def wedge_spin_matrix(a: int, b: int) -> Mat:
    """sigma(v wedge w) = (vw - wv)/4 as an endomorphism of S."""
    m = split_matrices()
    return mat_scale(commutator(m[a], m[b]), Fraction(1, 4))


@lru_cache(maxsize=None)
def so_basis() -> tuple[SoBasisElement, ...]:
    """21 root-vector/Cartan basis of so(V) from split-basis wedges.

    Wedges with exactly one factor R are rescaled by 1/(i sqrt2) so that all
    spin matrices are rational.  The Cartan elements are H_j = f_j wedge e_j.
    """
    out = []
    scale_r = (I * SQRT2).inverse()
    for a, b in combinations(range(DIM_V), 2):
        if a + b == DIM_V - 1:  # e_j wedge f_j -> use f_j wedge e_j
            a, b = b, a
            name = f"H{DIM_V - a}"
        else:
            name = f"{SPLIT_NAMES[a]}^{SPLIT_NAMES[b]}"
        scale = scale_r if (a == 3) != (b == 3) else ONE
        out.append(SoBasisElement(
            name, (a, b), scale,
            mat_scale(wedge_vector_matrix(a, b), scale),
            mat_scale(wedge_spin_matrix(a, b), scale),
        ))
    cartan = [x for x in out if x.name.startswith("H")]
    rest = [x for x in out if not x.name.startswith("H")]
    return tuple(sorted(cartan, key=lambda x: x.name) + rest)


def cartan_elements() -> tuple[SoBasisElement, ...]:
    return tuple(x for x in so_basis() if x.name.startswith("H"))


def sigma_gamma_pair(mu: int, nu: int) -> Mat:
    """sigma(Gamma_mu wedge Gamma_nu) computed from the split-basis model."""
    frame = gamma_system().frame
    acc = zeros(DIM_S)
    for a, ca in enumerate(frame[mu]):
        for b, cb in enumerate(frame[nu]):
            if ca and cb and a != b:
                acc = mat_add(acc, mat_scale(wedge_spin_matrix(a, b), ca * cb))
    return acc


# --- verification routines ---------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    ok: bool
    expected: object = None
    got: object = None

    def as_dict(self):
        return {"name": self.name, "ok": self.ok, "expected": _jsonable(self.expected), "got": _jsonable(self.got)}


def _jsonable(x):
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return str(x)
    return x


def check_anticommutation() -> CheckResult:
    gs = gamma_matrices()
    bad = []
    for mu, nu in product(range(DIM_V), repeat=2):
        lhs = mat_add(mat_mul(gs[mu], gs[nu]), mat_mul(gs[nu], gs[mu]))
        rhs = mat_scale(identity(DIM_S), -2 if mu == nu else 0)
        if lhs != rhs:
            bad.append((mu + 1, nu + 1))
    return CheckResult("gamma anticommutation (49 pairs)", not bad, 49, 49 - len(bad))


def check_volume() -> CheckResult:
    ok = volume_element() == mat_scale(identity(DIM_S), -1)
    return CheckResult("vol = -Id", ok, "-Id", "-Id" if ok else "other")


def contraction_factor(p: int) -> Scalar | None:
    """The scalar k with sum_{mu != nu} G_mu G_nu G_A G_mu G_nu = k G_A for all |A| = p."""
    gs = gamma_matrices()
    factor = None
    for A in subsets(p):
        ga = gamma_product(A)
        acc = zeros(DIM_S)
        for mu, nu in permutations(range(DIM_V), 2):
            gmn = mat_mul(gs[mu], gs[nu])
            acc = mat_add(acc, mat_mul(mat_mul(gmn, ga), gmn))
        # read the factor from a nonzero entry of Gamma_A
        i, j = next((i, j) for i in range(DIM_S) for j in range(DIM_S) if ga[i][j])
        k = acc[i][j] / ga[i][j]
        if acc != mat_scale(ga, k):
            return None
        if factor is None:
            factor = k
        elif factor != k:
            return None
    return factor


def verify_fierz() -> list[CheckResult]:
    results = []
    bad = []
    for a, b in product(range(DIM_S), repeat=2):
        s, t = basis_spinor(a), basis_spinor(b)
        rhs = zeros(DIM_S)
        for p in range(4):
            rhs = mat_add(rhs, omega_p(p, s, t).to_matrix())
        rhs = mat_scale(rhs, Fraction(1, 8))
        if outer(s, t) != rhs:
            bad.append((SPIN_NAMES[a], SPIN_NAMES[b]))
    results.append(CheckResult("Fierz identity (64 pairs)", not bad, [], bad))
    for p in range(4):
        want = Scalar(7 - (7 - 2 * p) ** 2)
        got = contraction_factor(p)
        results.append(CheckResult(f"contraction factor p={p}", got == want, want, got))
    return results


def cubic_spinor_residual(s: Sequence, t: Sequence) -> Spinor:
    """(<t,t>) s - (<t,s>) t - (1/3) omega2(s,t).t, where omega2 acts via the Clifford action."""
    lhs = vec_lin((pairing(t, t), s), (-pairing(t, s), t))
    w = omega_p(2, s, t)
    act = mat_apply(w.to_matrix(), t)
    return vec_lin((ONE, lhs), (Fraction(-1, 3), act))


def verify_cubic_spinor_identity() -> CheckResult:
    bad = []
    basis = [basis_spinor(k) for k in range(DIM_S)]
    tests = [(i, (j,)) for i in range(DIM_S) for j in range(DIM_S)]
    tests += [(i, (j, k)) for i in range(DIM_S) for j, k in combinations(range(DIM_S), 2)]
    for i, js in tests:
        t = vec_lin(*[(ONE, basis[j]) for j in js])
        r = cubic_spinor_residual(basis[i], t)
        if any(r):
            bad.append((i, js))
    return CheckResult(f"cubic spinor identity ({len(tests)} cases incl. polarization)", not bad, [], bad)


def omega_vanishing_system() -> ExactMatrix:
    """Equations sigma(w_a) e_b + sigma(w_b) e_a = 0 on w in Hom(S, so(V)) (168 unknowns)."""
    so = so_basis()
    nk = len(so)
    rows = []
    pairs = [(a, b) for a in range(DIM_S) for b in range(a, DIM_S)]
    for a, b in pairs:
        for comp in range(DIM_S):
            row = {}
            for k, el in enumerate(so):
                x = el.spin_matrix[comp][b]
                if x:
                    row[a * nk + k] = row.get(a * nk + k, ZERO) + x
                y = el.spin_matrix[comp][a]
                if y:
                    row[b * nk + k] = row.get(b * nk + k, ZERO) + y
            rows.append({k: v for k, v in row.items() if v})
    m = ExactMatrix(len(rows), DIM_S * nk)
    m.rows = rows
    return m


def omega_vanishing_rank() -> int:
    return omega_vanishing_system().rank()


def check_pairing_invariance() -> CheckResult:
    bad = []
    for el in so_basis():
        for a, b in product(range(DIM_S), repeat=2):
            s, t = basis_spinor(a), basis_spinor(b)
            if pairing(mat_apply(el.spin_matrix, s), t) + pairing(s, mat_apply(el.spin_matrix, t)):
                bad.append((el.name, a, b))
    return CheckResult("so(V) preserves the spinor pairing", not bad, [], bad[:5])


def check_clifford_skew() -> CheckResult:
    bad = []
    for k, m in enumerate(split_matrices()):
        for a, b in product(range(DIM_S), repeat=2):
            s, t = basis_spinor(a), basis_spinor(b)
            if pairing(mat_apply(m, s), t) + pairing(s, mat_apply(m, t)):
                bad.append((SPLIT_NAMES[k], a, b))
    return CheckResult("<v.s, t> = -<s, v.t>", not bad, [], bad[:5])


def check_sigma_half_gamma() -> CheckResult:
    gs = gamma_matrices()
    bad = []
    for mu, nu in combinations(range(DIM_V), 2):
        if sigma_gamma_pair(mu, nu) != mat_scale(mat_mul(gs[mu], gs[nu]), HALF):
            bad.append((mu + 1, nu + 1))
    return CheckResult("sigma(e_mu ^ e_nu) = 1/2 Gamma_mu_nu", not bad, [], bad)


# --- spin matrix sparsity pattern -------------------------------------------------------

_SO7_PATTERN = """
h1 a100 a110 a111 a112 a122 0
b100 h2 a010 a011 a012 0 -a122
b110 b010 h3 a001 0 -a012 -a112
b111 b011 b001 0 -a001 -a011 -a111
b112 b012 0 -b001 -h3 -a010 -a110
b122 0 -b012 -b011 -b010 -h2 -a100
0 -b122 -b112 -b111 -b110 -b100 -h1
"""

_SPIN_PATTERN = """
d -a111 -a011 -a001 0 -a012 -a112 -a122
-b111 d b100 b110 a012 0 a001 -a011
-b011 a100 d b010 a112 -a001 0 a111
-b001 a110 a010 d a122 a011 -a111 0
0 -b012 -b112 -b122 d b111 b011 b001
b012 0 -b001 b011 a111 d -a100 -a110
b112 b001 0 -b111 a011 -b100 d -a010
b122 -b011 b111 0 a001 -b110 -b010 d
"""

# diagonal of the spin pattern: coefficients of (h1, h2, h3) times 1/2
SPIN_DIAGONAL = ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1),
                 (-1, -1, -1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def _parse_pattern(text: str) -> list[list[tuple[int, str]]]:
    out = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            if tok == "0":
                row.append((0, ""))
            elif tok.startswith("-"):
                row.append((-1, tok[1:]))
            else:
                row.append((1, tok))
        out.append(row)
    return out


def so7_pattern():
    return _parse_pattern(_SO7_PATTERN)


def spin_pattern():
    return _parse_pattern(_SPIN_PATTERN)


def pattern_label(el: SoBasisElement) -> tuple[str, Scalar]:
    """Label of an so(V) basis element in the 7x7 pattern, and its coefficient."""
    pat = so7_pattern()
    found = {}
    for i in range(DIM_V):
        for j in range(DIM_V):
            x = el.vector_matrix[i][j]
            if not x:
                continue
            sign, label = pat[i][j]
            if not label:
                raise ValueError(f"{el.name} has support outside the so(7) pattern")
            found.setdefault(label, set()).add(x / sign)
    if len(found) != 1:
        raise ValueError(f"{el.name} does not correspond to a single pattern label: {found}")
    (label, vals), = found.items()
    if len(vals) != 1:
        raise ValueError(f"{el.name} is not a multiple of the pattern entry {label}")
    return label, vals.pop()


def spin_pattern_matrix(label: str) -> Mat:
    """The +-1 matrix of positions carrying ``label`` in the spin pattern."""
    pat = spin_pattern()
    return tuple(tuple(Scalar(s) if lab == label else ZERO for s, lab in row) for row in pat)


def check_spin_pattern() -> tuple[CheckResult, dict]:
    """Support of each spin matrix lies on its label's positions; diagonal is the stated half-sums.

    Returns the check and the derived proportionality factors kappa with
    sigma(X_label) = kappa * (label pattern), where these exist.
    """
    bad = []
    factors = {}
    for el in so_basis():
        label, coeff = pattern_label(el)
        m = el.spin_matrix
        if label.startswith("h"):
            j = int(label[1]) - 1
            for i in range(DIM_S):
                want = Scalar(Fraction(SPIN_DIAGONAL[i][j], 2)) * coeff
                if m[i][i] != want:
                    bad.append((el.name, "diag", i))
            if any(m[i][k] for i in range(DIM_S) for k in range(DIM_S) if i != k):
                bad.append((el.name, "offdiag"))
            continue
        pm = spin_pattern_matrix(label)
        for i in range(DIM_S):
            for k in range(DIM_S):
                if m[i][k] and not pm[i][k]:
                    bad.append((el.name, i, k))
        ratios = {m[i][k] / pm[i][k] for i in range(DIM_S) for k in range(DIM_S) if pm[i][k]}
        if len(ratios) == 1:
            factors[label] = (el.name, ratios.pop() / coeff)
    return CheckResult("spin matrices follow the B3 spin pattern", not bad, [], bad[:5]), factors


# --- the Cayley 4-form -------------------------------------------------------------

QUARTIC_MONOMIALS = (
    ((0, 1, 4, 5), 1), ((0, 2, 4, 6), 1), ((0, 3, 4, 7), 1),
    ((1, 2, 5, 6), -1), ((1, 3, 5, 7), -1), ((2, 3, 6, 7), -1),
    ((0, 5, 6, 7), -2), ((1, 2, 3, 4), 2),
)


def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


@dataclass(frozen=True)
class QuarticTensor:
    """Alternating 4-form on S: ascending 4-subset of the spin basis -> coefficient."""
    comps: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "QuarticTensor":
        return cls(tuple(sorted((k, Scalar.coerce(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.comps)

    def value(self, idx: Sequence[int]) -> Scalar:
        sign = _perm_sign(idx)
        if not sign:
            return ZERO
        c = self.as_dict().get(tuple(sorted(idx)), ZERO)
        return c if sign > 0 else -c

    def evaluate(self, s1, s2, s3, s4) -> Scalar:
        acc = ZERO
        d = self.as_dict()
        vecs = (s1, s2, s3, s4)
        for key, c in d.items():
            for perm in permutations(range(4)):
                prod_ = c * _perm_sign(perm)
                for slot, p in enumerate(perm):
                    x = vecs[slot][key[p]]
                    if not x:
                        prod_ = ZERO
                        break
                    prod_ = prod_ * x
                if prod_:
                    acc = acc + prod_
        return acc

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other):
        d = self.as_dict()
        for k, v in other.comps:
            d[k] = d.get(k, ZERO) + v
        return QuarticTensor.from_dict(d)

    def __neg__(self):
        return QuarticTensor(tuple((k, -v) for k, v in self.comps))

    def __str__(self):
        def name(i):
            return ("phi" if i < 4 else "psi") + str(i % 4)
        return " + ".join(f"({v})*{'^'.join(name(i) for i in k)}" for k, v in self.comps)


def cayley_quartic() -> QuarticTensor:
    return QuarticTensor.from_dict({k: v for k, v in QUARTIC_MONOMIALS})


def _dual_pairing(i: int, j: int) -> Scalar:
    return ONE if (i - j) % 8 == 4 else ZERO


def _det(m: list[list[Scalar]]) -> Scalar:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = ZERO
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * _det(minor)
            acc = acc + (term if j % 2 == 0 else -term)
    return acc


def form_inner(k1: Sequence[int], k2: Sequence[int]) -> Scalar:
    return _det([[_dual_pairing(a, b) for b in k2] for a in k1])


def quartic_inner(q1: QuarticTensor, q2: QuarticTensor) -> Scalar:
    acc = ZERO
    for k1, c1 in q1.comps:
        for k2, c2 in q2.comps:
            v = form_inner(k1, k2)
            if v:
                acc = acc + c1 * c2 * v
    return acc


def hodge_star(q: QuarticTensor) -> QuarticTensor:
    """alpha ^ *beta = eta(alpha, beta) vol with vol = phi0^...^phi3^psi0^...^psi3."""
    out = {}
    for J in combinations(range(DIM_S), 4):
        Jc = tuple(x for x in range(DIM_S) if x not in J)
        sign = _perm_sign(J + Jc)
        acc = ZERO
        for K, c in q.comps:
            v = form_inner(J, K)
            if v:
                acc = acc + c * v
        if acc:
            out[Jc] = out.get(Jc, ZERO) + acc * sign
    return QuarticTensor.from_dict(out)


def act_on_quartic(m: Mat, q: QuarticTensor) -> QuarticTensor:
    """Induced action of an endomorphism on 4-forms: (A.Q)(s..) = -sum Q(.., A s_i, ..)."""
    out = {}
    for J in combinations(range(DIM_S), 4):
        acc = ZERO
        for pos in range(4):
            for k in range(DIM_S):
                x = m[k][J[pos]]
                if x:
                    idx = J[:pos] + (k,) + J[pos + 1:]
                    v = q.value(idx)
                    if v:
                        acc = acc - x * v
        if acc:
            out[J] = acc
    return QuarticTensor.from_dict(out)


def verify_cayley() -> list[CheckResult]:
    q = cayley_quartic()
    res = []
    eta = quartic_inner(q, q)
    res.append(CheckResult("eta(Q,Q) = 14", eta == 14, 14, eta))
    star = hodge_star(q)
    res.append(CheckResult("*Q = -Q", (star + q).is_zero(), str(-q), str(star)))
    bad = [el.name for el in so_basis() if not act_on_quartic(el.spin_matrix, q).is_zero()]
    res.append(CheckResult("so(V) annihilates Q (21 generators)", not bad, [], bad))
    sub = (0, 2, 3, 5)
    v = q.value(sub)
    res.append(CheckResult("Q vanishes on span(phi0, phi2, phi3, psi1)", not v, 0, v))
    return res


def lagrangian_kernel_check() -> list[CheckResult]:
    """Insert phi0 into Q, restrict to the annihilator of phi0, and find the insertion kernel."""
    q = cayley_quartic()
    perp = [k for k in range(DIM_S) if not _dual_pairing(0, k)]  # all but psi0
    three = {}
    for J in combinations(perp, 3):
        v = q.value((0,) + J)
        if v:
            three[J] = v
    want = {(5, 6, 7): Scalar(-2)}
    res = [CheckResult("iota_phi0 Q on perp(phi0) = -2 psi1^psi2^psi3", three == want,
                       {"psi1^psi2^psi3": -2}, {str(k): v for k, v in three.items()})]
    # kernel of v -> iota_v (restricted 3-form), v in perp
    cols = []
    pairs = list(combinations(perp, 2))
    for k in perp:
        col = {}
        for r, (a, b) in enumerate(pairs):
            idx = (k, a, b)
            sign = _perm_sign(idx)
            if not sign:
                continue
            c = three.get(tuple(sorted(idx)), ZERO)
            if c:
                col[r] = c if sign > 0 else -c
        cols.append(col)
    ker = ExactMatrix.from_columns(len(pairs), cols).kernel()
    span = sorted(perp[i] for v in ker for i in v)
    ok = len(ker) == 4 and span == [0, 1, 2, 3]
    res.append(CheckResult("insertion kernel = span(phi0..phi3)", ok, 4, len(ker)))
    nontriv = any(three.get(tuple(sorted((5, a, b))), ZERO) for a, b in pairs)
    res.append(CheckResult("psi1 inserts non-trivially", nontriv, True, nontriv))
    return res


def clifford_suite() -> list[CheckResult]:
    res = [check_anticommutation(), check_volume(), check_clifford_skew(), check_pairing_invariance(),
           check_sigma_half_gamma(), check_spin_pattern()[0]]
    res += verify_fierz()
    res.append(verify_cubic_spinor_identity())
    rk = omega_vanishing_rank()
    res.append(CheckResult("omega-vanishing rank", rk == 168, 168, rk))
    res += verify_cayley()
    res += lagrangian_kernel_check()
    return res
