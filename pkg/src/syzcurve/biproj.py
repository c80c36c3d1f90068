"""Balanced even-degree machinery: the companion matrices C and A of a
balanced Hilbert-Burch matrix, the invariants mu(I2(C)) and gcd I3(A),
the configuration of multiplicity-c points, and reduction of a balanced
matrix to one of the eleven canonical shapes.

For a balanced phi (all entries of degree c) the coefficient tensor
coef_r(phi_ik) is read two ways:

    C[r][k] = sum_i coef_r(phi_ik) T_i        (linear in T1, T2, T3)
    A[r][i] = sum_k coef_r(phi_ik) u_k        (linear in u1, u2)

so T phi u^T = rho C u^T = rho A T^T with rho = (y^c, x y^(c-1), ..., x^c).
A row vector p and a column vector q with p phi q = 0 is a generalized
zero; q then runs over the roots of gcd I3(A) and p spans the kernel of
A(q).  Binary forms in u are stored as BinForm with x := u1, y := u2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from gmpy2 import mpq

from .algebra import (
    QQ, ExtNode, InternalError, UniPoly, common_node, identity, mat_inv,
    mat_mul, nullspace, rank, solve_left, split_first, transpose,
)
from .binforms import BinForm, bf_factor_Q, bf_gcd, bf_gcd_many, bf_squarefree
from .syzygy import HBMatrix, ParamTriple, birationality, hb_generic_balanced, hb_kernel, is_balanced

__all__ = [
    "LinFormMatrix", "build_C_A", "mu_entries", "mu_I2C", "gcd_I3A",
    "gcd_shape", "cp_label_from_shape", "ecp_label_from_invariants",
    "cp_configuration", "orbit_reduce", "in_canonical", "transform",
    "CP_LABELS", "ECP_LABELS", "CHART", "ecp_fixture", "with_all_roots",
    "balanced_hb",
]

CP_LABELS = ("∅", "c", "(c,c)", "(c,c,c)", "c:c", "(c:c,c)", "c:c:c")
ECP_LABELS = ("μ2", "c:c:c", "c:c,c", "c,c,c", "c:c", "c,c", "(c,μ4)",
              "(c,μ5)", "(∅,μ4)", "(∅,μ5)", "(∅,μ6)")

# label -> (mu(I1(phi)), mu(I2(C)), root-exponent shape of gcd I3(A));
# shape None means gcd I3(A) = 0
CHART = {
    "(∅,μ6)": (6, 6, ()),
    "(∅,μ5)": (5, 6, ()),
    "(c,μ5)": (5, 5, (1,)),
    "(∅,μ4)": (4, 6, ()),
    "(c,μ4)": (4, 5, (1,)),
    "c,c": (4, 4, (1, 1)),
    "c:c": (4, 4, (2,)),
    "c,c,c": (3, 3, (1, 1, 1)),
    "c:c,c": (3, 3, (2, 1)),
    "c:c:c": (3, 3, (3,)),
    "μ2": (2, 1, None),
}

_SHAPE_TO_CP = {
    (): "∅", (1,): "c", (1, 1): "(c,c)", (1, 1, 1): "(c,c,c)",
    (2,): "c:c", (2, 1): "(c:c,c)", (3,): "c:c:c",
}


@dataclass
class LinFormMatrix:
    """Rows of linear forms; each entry is a coefficient tuple over ``vars``."""
    K: object
    vars: Tuple[str, ...]
    rows: List[List[tuple]]

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def entry_str(self, i, j) -> str:
        parts = []
        for a, v in zip(self.rows[i][j], self.vars):
            if self.K.is_zero(a):
                continue
            s = self.K.fmt(a) if self.K is not QQ else str(a)
            if s == "1":
                parts.append(v)
            elif s == "-1":
                parts.append("-" + v)
            else:
                parts.append(f"{s}*{v}" if self.K is QQ else f"({s})*{v}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def to_strings(self):
        return [[self.entry_str(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]

    def nonzero_rows(self) -> "LinFormMatrix":
        keep = [r for r in self.rows if any(not self.K.is_zero(a) for e in r for a in e)]
        return LinFormMatrix(self.K, self.vars, keep)

    def evaluate(self, point) -> list:
        """Scalar matrix obtained by substituting ``point`` for the variables."""
        out = []
        for r in self.rows:
            out.append([sum((a * p for a, p in zip(e, point) if a and p), self.K.zero) for e in r])
        return out


def _require_balanced(phi: HBMatrix) -> int:
    if phi.degs[0] != phi.degs[1]:
        raise ValueError("companion matrices need a balanced matrix (equal column degrees)")
    return phi.degs[0]


def build_C_A(phi: HBMatrix):
    c = _require_balanced(phi)
    K = phi.K
    C = [[tuple(phi[i, k][r] for i in range(3)) for k in range(2)] for r in range(c + 1)]
    A = [[tuple(phi[i, k][r] for k in range(2)) for i in range(3)] for r in range(c + 1)]
    return LinFormMatrix(K, ("T1", "T2", "T3"), C), LinFormMatrix(K, ("u1", "u2"), A)


def _entry_vectors(phi: HBMatrix):
    return [list(phi[i, k].c) for i in range(3) for k in range(2)]


def mu_entries(phi: HBMatrix) -> int:
    """mu(I1(phi)): dimension of the span of the entries (balanced phi)."""
    _require_balanced(phi)
    return rank(phi.K, _entry_vectors(phi))


def _quad(a, b):
    """Product of linear forms in T as coefficients of T1^2, T1T2, T1T3, T2^2, T2T3, T3^2."""
    idx = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
    out = [0] * 6
    for i in range(3):
        for j in range(3):
            if a[i] and b[j]:
                k = idx[(min(i, j), max(i, j))]
                out[k] = out[k] + a[i] * b[j]
    return out


def mu_I2C(C: LinFormMatrix) -> int:
    K = C.K
    vecs = []
    rows = C.rows
    for r in range(len(rows)):
        for s in range(r + 1, len(rows)):
            p = _quad(rows[r][0], rows[s][1])
            q = _quad(rows[r][1], rows[s][0])
            vecs.append([K.coerce(x - y) for x, y in zip(p, q)])
    return rank(K, vecs) if vecs else 0


def _A_minors(A: LinFormMatrix):
    K = A.K
    forms = [[BinForm(K, 1, [e[1], e[0]]) for e in row] for row in A.rows]
    out = []
    for r, s, t in itertools.combinations(range(len(forms)), 3):
        M = (forms[r], forms[s], forms[t])
        d = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
             - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
             + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
        out.append(d)
    return out


def gcd_I3A(A: LinFormMatrix) -> BinForm:
    """gcd of the 3x3 minors of A as a form in (u1, u2); zero cubic if all vanish."""
    minors = [m for m in _A_minors(A) if not m.is_zero()]
    if not minors:
        return BinForm.zero(A.K, 3)
    return bf_gcd_many(minors)


def gcd_shape(h: BinForm):
    """Root-exponent multiset of a rational form, largest first; None for 0."""
    if h.is_zero():
        return None
    if h.deg == 0:
        return ()
    ex = []
    for f, e in bf_factor_Q(h.coerce(QQ)):
        ex.extend([e] * f.deg)
    return tuple(sorted(ex, reverse=True))


def cp_label_from_shape(shape) -> str:
    if shape is None or shape not in _SHAPE_TO_CP:
        raise InternalError(f"gcd I3(A) shape {shape} matches no configuration")
    return _SHAPE_TO_CP[shape]


def ecp_label_from_invariants(mu1: int, mu2: int, shape) -> str:
    for lab, inv in CHART.items():
        if inv == (mu1, mu2, shape):
            return lab
    raise InternalError(f"invariants {(mu1, mu2, shape)} match no orbit")


# ---------------------------------------------------------------------------
# roots and generalized zeros


def _linear_root(f: BinForm):
    """[u1:u2] killing the linear form f = f[1] u1 + f[0] u2."""
    return (-f[0], f[1]) if f[1] else (f.K.one, f.K.zero)


def with_all_roots(h: BinForm, fn):
    """Call ``fn(K, roots)`` with every root [u1:u2] of the squarefree
    rational form ``h`` living in one node K."""
    roots = []
    big = []
    for f, _ in bf_factor_Q(h.coerce(QQ)):
        if f.deg == 1:
            roots.append(_linear_root(f))
        else:
            big.append(f.dehomogenize())
    if not big:
        return fn(QQ, roots)
    if len(big) == 1 and big[0].deg == 2:
        F = big[0]
        K = ExtNode(QQ, F, "t", irreducible=True)
        t = K.gen
        return fn(K, roots + [(t, K.one), (-F.c[1] - t, K.one)])
    if len(big) == 1 and big[0].deg == 3:
        F = big[0]
        K1 = ExtNode(QQ, F, "a", irreducible=True)
        a = K1.gen
        q = F.coerce(K1).exact_div(UniPoly(K1, [-a, K1.one]))

        def inner(K2, b):
            third = K2.coerce(-q.c[1]) - b
            return fn(K2, roots + [(a, K1.one), (b, K2.one), (third, K2.one)])
        return split_first(K1, q, inner, name="b")[2]
    raise InternalError("roots requested for a form of degree > 3")


def a_at(A: LinFormMatrix, u, K=None):
    K = K or common_node(A.K, *[getattr(v, "node", QQ) for v in u])
    return [[K.coerce(e[0]) * u[0] + K.coerce(e[1]) * u[1] for e in row] for row in A.rows]


def _kernel_point(A: LinFormMatrix, u, K):
    N = nullspace(K, a_at(A, u, K), 3)
    if len(N) != 1:
        raise InternalError(f"kernel of A(u) has dimension {len(N)}, expected 1")
    return N[0]


# ---------------------------------------------------------------------------
# configuration


def balanced_hb(g: ParamTriple) -> HBMatrix:
    bal, _ = is_balanced(g)
    if not bal:
        raise ValueError("input triple is not balanced")
    return hb_generic_balanced(g)


def cp_configuration(g):
    """Configuration label of multiplicity-c points and per-root data.

    Accepts a balanced ParamTriple or a balanced HBMatrix.  Each entry of
    the returned list describes one Q-irreducible factor of gcd I3(A):
    the factor, its exponent e, its conjugate count, the on-curve point p
    (kernel of A at a root, over the root's node) and e - 1 infinitely near
    multiplicity-c points."""
    phi = balanced_hb(g) if isinstance(g, ParamTriple) else g
    _require_balanced(phi)
    C, A = build_C_A(phi)
    h = gcd_I3A(A)
    shape = gcd_shape(h)
    label = cp_label_from_shape(shape)
    points = []
    if shape:
        for f, e in bf_factor_Q(h.coerce(QQ)):
            if f.deg == 1:
                K, u = QQ, _linear_root(f)
            else:
                K = ExtNode(QQ, f.dehomogenize(), "t", irreducible=True)
                u = (K.gen, K.one)
            p = _kernel_point(A, u, K)
            points.append({
                "factor": f, "exponent": e, "conjugates": f.deg,
                "point": tuple(p), "node": K, "u": u,
                "infinitely_near": e - 1,
            })
    return label, points


# ---------------------------------------------------------------------------
# canonical shapes

# entry pattern per label: symbol index, 0 for a zero entry; the symbols
# must be linearly independent
_PATTERNS = {
    "μ2": ((1, 0), (2, 1), (0, 2)),
    "c:c:c": ((1, 2), (3, 1), (0, 3)),
    "c:c,c": ((1, 0), (2, 3), (0, 2)),
    "c,c,c": ((1, 1), (2, 0), (0, 3)),
    "c:c": ((1, 2), (3, 4), (0, 3)),
    "c,c": ((1, 2), (3, 3), (0, 4)),
    "(c,μ4)": ((1, 2), (3, 1), (0, 4)),
    "(c,μ5)": ((1, 2), (3, 4), (0, 5)),
    "(∅,μ4)": ((1, 2), (2, 3), (3, 4)),
    "(∅,μ5)": ((1, 2), (3, 4), (5, 1)),
    "(∅,μ6)": ((1, 2), (3, 4), (5, 6)),
}


def in_canonical(label: str, phi: HBMatrix) -> bool:
    """Exact membership of phi in the canonical set for ``label``."""
    pat = _PATTERNS[label]
    K = phi.K
    sym: Dict[int, BinForm] = {}
    for i in range(3):
        for k in range(2):
            s = pat[i][k]
            f = phi[i, k]
            if s == 0:
                if not f.is_zero():
                    return False
            elif s in sym:
                if not (f - sym[s]).is_zero():
                    return False
            else:
                sym[s] = f
    vecs = [list(sym[s].c) for s in sorted(sym)]
    return rank(K, vecs) == len(vecs)


def transform(phi: HBMatrix, chi, Kmat) -> HBMatrix:
    """chi * phi * Kmat for scalar matrices chi (3x3) and Kmat (2x2)."""
    nodes = [phi.K] + [getattr(v, "node", QQ) for r in chi for v in r] + \
        [getattr(v, "node", QQ) for r in Kmat for v in r]
    K = common_node(*nodes)
    P = phi.coerce(K)
    chi = [[K.coerce(v) for v in r] for r in chi]
    Kmat = [[K.coerce(v) for v in r] for r in Kmat]
    mid = [[BinForm.zero(K, P.degs[k]) for k in range(2)] for _ in range(3)]
    for i in range(3):
        for k in range(2):
            acc = BinForm.zero(K, P.degs[k])
            for a in range(3):
                if chi[i][a]:
                    acc = acc + P[a, k] * chi[i][a]
            mid[i][k] = acc
    out = [[None, None] for _ in range(3)]
    for i in range(3):
        for k in range(2):
            acc = BinForm.zero(K, P.degs[0])
            for b in range(2):
                if Kmat[b][k]:
                    acc = acc + mid[i][b] * Kmat[b][k]
            out[i][k] = acc
    return HBMatrix(out, P.degs)


# ---------------------------------------------------------------------------
# orbit reduction


def _col(phi: HBMatrix, v, K):
    """Coefficient vectors of the entries of phi v (v a column 2-vector)."""
    out = []
    for i in range(3):
        f = phi[i, 0].coerce(K) * K.coerce(v[0]) + phi[i, 1].coerce(K) * K.coerce(v[1])
        out.append(list(f.c))
    return out


def _combine(K, p, vecs):
    n = len(vecs[0])
    acc = [K.zero] * n
    for a, v in zip(p, vecs):
        a = K.coerce(a)
        if a:
            acc = [x + a * K.coerce(y) for x, y in zip(acc, v)]
    return acc


def _complement2(K, v):
    """A column vector independent of v."""
    return (K.zero, K.one) if not K.is_zero(v[0]) else (K.one, K.zero)


def _complete_rows(K, fixed: Dict[int, list]):
    """3x3 matrix with the given rows (by index) and standard rows elsewhere,
    chosen so the result is invertible."""
    free = [i for i in range(3) if i not in fixed]
    std = [[K.one if j == i else K.zero for j in range(3)] for i in range(3)]
    for combo in itertools.permutations(range(3), len(free)):
        M = [None] * 3
        for i, r in fixed.items():
            M[i] = [K.coerce(a) for a in r]
        for i, s in zip(free, combo):
            M[i] = std[s]
        if rank(K, M) == 3:
            return M
    raise InternalError("fixed rows are dependent")


def _solve_row(K, target, vecs):
    r = solve_left(K, target, vecs)
    if r is None:
        raise InternalError("row equation has no solution")
    return r


def _Kmat(c1, c2):
    return [[c1[0], c2[0]], [c1[1], c2[1]]]


def _gz_single(phi, A, u, K):
    v = tuple(K.coerce(a) for a in u)
    return v, _kernel_point(A, v, K)


def _reduce_gz(label, phi: HBMatrix, A: LinFormMatrix, h: BinForm):
    """Reductions driven by the generalized zeros (roots of gcd I3(A))."""
    facs = bf_squarefree(h.coerce(QQ))
    if label in ("(c,μ5)", "(c,μ4)", "c:c", "c:c:c"):
        (f, _), = facs
        u = _linear_root(f)
        K = phi.K
        v1, p1 = _gz_single(phi, A, u, K)
        w = _complement2(K, v1)
        G = _col(phi, v1, K)
        F = _col(phi, w, K)
        Km = _Kmat(v1, w)
        if label == "(c,μ5)":
            chi = _complete_rows(K, {2: p1})
        elif label == "c:c":
            r2 = _solve_row(K, _combine(K, p1, F), G)
            chi = _complete_rows(K, {1: r2, 2: p1})
        elif label == "c:c:c":
            r2 = _solve_row(K, _combine(K, p1, F), G)
            r1 = _solve_row(K, _combine(K, r2, F), G)
            chi = [list(r1), list(r2), list(p1)]
        else:
            chi = _reduce_c_mu4(K, p1, G, F)
        return chi, Km
    # labels with several generalized zeros
    sq = BinForm.const(QQ, 1)
    for f, _ in facs:
        sq = sq * f

    def run(K, roots):
        data = []
        for u in roots:
            v = tuple(K.coerce(a) for a in u)
            data.append((v, _kernel_point(A, v, K)))
        return K, data

    K, data = with_all_roots(sq, run)
    if label == "c,c":
        (va, pa), (vb, pb) = data
        Km = _Kmat(va, tuple(a + b for a, b in zip(va, vb)))
        chi = _complete_rows(K, {1: pb, 2: pa})
        return chi, Km
    if label == "c:c,c":
        # the double root comes first in the exponent order
        dbl = [f for f, e in facs if e == 2][0]
        k_dbl = 0 if _is_root(dbl, data[0][0], K) else 1
        (v1, p1), (v2, p2) = data[k_dbl], data[1 - k_dbl]
        G = _col(phi, v1, K)
        Fv2 = _col(phi, v2, K)
        r = _solve_row(K, _combine(K, p1, Fv2), G)
        return [list(p2), list(r), list(p1)], _Kmat(v1, v2)
    if label == "c,c,c":
        (v1, p1), (v2, p2), (v3, p3) = data
        # v3 = alpha v1 + beta v2
        ab = _solve_row(K, list(v3), [list(v1), list(v2)])
        alpha, beta = ab
        Km = _Kmat(tuple(alpha * a for a in v1), tuple(-beta * a for a in v2))
        return [list(p3), list(p2), list(p1)], Km
    raise InternalError(f"no generalized-zero reduction for {label}")


def _is_root(f: BinForm, v, K) -> bool:
    return K.is_zero(f.coerce(K)(v[0], v[1]))


def _reduce_c_mu4(K, p1, G, F):
    """Rows r1, r2 with r1 phi v1 = r2 phi w and r2 independent of p1."""
    n = len(G[0])
    # (r, s) with sum r_i F_i = sum s_j G_j
    cols = F + G
    M = [[cols[j][t] for j in range(6)] for t in range(n)]
    N = nullspace(K, M, 6)
    cands = [v[:3] for v in N]
    tried = []
    for r2 in cands + [[a + b for a, b in zip(x, y)] for x, y in itertools.combinations(cands, 2)]:
        if all(K.is_zero(a) for a in r2) or rank(K, [r2, list(p1)]) < 2:
            continue
        target = _combine(K, r2, F)
        r1 = solve_left(K, target, G)
        if r1 is None:
            continue
        for t in (0, 1, -1, 2):
            r1t = [a + K.coerce(t) * b for a, b in zip(r1, p1)]
            chi = [r1t, list(r2), list(p1)]
            if rank(K, chi) == 3:
                return chi
        tried.append(r2)
    raise InternalError("(c,μ4) reduction found no admissible rows")


def _relations(phi: HBMatrix):
    """Scalar 3x2 matrices Gamma with sum Gamma_ik phi_ik = 0."""
    K = phi.K
    vecs = _entry_vectors(phi)
    n = len(vecs[0])
    M = [[vecs[j][t] for j in range(6)] for t in range(n)]
    return [[[v[2 * i], v[2 * i + 1]] for i in range(3)] for v in nullspace(K, M, 6)]


def _pencil_normal(K, P1, P2):
    """X, Y, lam with X (P1 + lam P2) Y = [[1,0],[0,1],[0,0]] and
    X P2 Y = [[0,0],[1,0],[0,1]]."""
    for lam in (0, 1, -1, 2, -2, 3):
        P1l = [[P1[i][k] + K.coerce(lam) * P2[i][k] for k in range(2)] for i in range(3)]
        if rank(K, transpose(P1l)) < 2:
            continue
        cols = [[P1l[i][0] for i in range(3)], [P1l[i][1] for i in range(3)]]
        Z = None
        for s in range(3):
            z = [K.one if j == s else K.zero for j in range(3)]
            if rank(K, cols + [z]) == 3:
                Z = transpose(cols + [z])
                break
        X0 = mat_inv(K, Z)
        N = mat_mul(X0, P2)
        Ntop, N3 = N[:2], N[2]
        if all(K.is_zero(a) for a in N3):
            continue
        k1 = [-N3[1], N3[0]]
        k2 = [Ntop[0][0] * k1[0] + Ntop[0][1] * k1[1], Ntop[1][0] * k1[0] + Ntop[1][1] * k1[1]]
        Y = [[k1[0], k2[0]], [k1[1], k2[1]]]
        if rank(K, Y) < 2:
            continue
        s = N3[0] * k2[0] + N3[1] * k2[1]
        if K.is_zero(s):
            continue
        r = K.inv(s)
        Yi = mat_inv(K, Y)
        t = mat_mul(Yi, mat_mul(Ntop, [[k2[0]], [k2[1]]]))
        b = [-r * t[0][0], -r * t[1][0]]
        X1 = [[Yi[0][0], Yi[0][1], b[0]], [Yi[1][0], Yi[1][1], b[1]], [K.zero, K.zero, r]]
        return mat_mul(X1, X0), Y, lam
    raise InternalError("pencil is not of the expected Kronecker type")


def _entry_basis_pencil(phi: HBMatrix):
    """For mu = 2: phi = Q1 P1 + Q2 P2 with scalar P1, P2."""
    from .algebra import rref
    K = phi.K
    vecs = _entry_vectors(phi)
    R, piv = rref(K, vecs)
    basis = R[:2]
    coeffs = []
    for v in vecs:
        a = solve_left(K, v, basis)
        if a is None:
            raise InternalError("entry outside the two-dimensional span")
        coeffs.append(a)
    P1 = [[coeffs[2 * i + k][0] for k in range(2)] for i in range(3)]
    P2 = [[coeffs[2 * i + k][1] for k in range(2)] for i in range(3)]
    return P1, P2


def orbit_reduce(phi: HBMatrix):
    """(label, chi phi xi^-1, (chi, xi)) with the middle term canonical.

    The label is read from the invariants; the transformation follows the
    shape of the generalized zeros (mu <= 5 with a zero), or the relation
    pencil among the entries (no generalized zero).  The group element may
    live in an extension node when the zeros are conjugate."""
    _require_balanced(phi)
    C, A = build_C_A(phi)
    mu1 = mu_entries(phi)
    mu2 = mu_I2C(C)
    h = gcd_I3A(A)
    shape = gcd_shape(h)
    label = ecp_label_from_invariants(mu1, mu2, shape)
    K = phi.K
    if label == "(∅,μ6)":
        chi, Km = identity(K, 3), identity(K, 2)
    elif label == "μ2":
        P1, P2 = _entry_basis_pencil(phi)
        chi, Km, _ = _pencil_normal(K, P1, P2)
    elif label == "(∅,μ5)":
        (G,) = _relations(phi)
        cols = [[G[i][0] for i in range(3)], [G[i][1] for i in range(3)]]
        for s in range(3):
            z = [K.one if j == s else K.zero for j in range(3)]
            if rank(K, [cols[0], z, cols[1]]) == 3:
                break
        Z = transpose([cols[0], z, cols[1]])
        D = [[K.one, K.zero, K.zero], [K.zero, K.one, K.zero], [K.zero, K.zero, -K.one]]
        X = mat_mul(D, mat_inv(K, Z))
        chi, Km = transpose(mat_inv(K, X)), identity(K, 2)
    elif label == "(∅,μ4)":
        G1, G2 = _relations(phi)
        X, Y, _ = _pencil_normal(K, G1, G2)
        R = [[K.zero, -K.one], [K.one, K.zero]]
        chi = transpose(mat_inv(K, X))
        Km = transpose(mat_mul(R, mat_inv(K, Y)))
    else:
        chi, Km = _reduce_gz(label, phi, A, h)
    out = transform(phi, chi, Km)
    if not in_canonical(label, out):
        raise InternalError(f"reduction for {label} did not reach the canonical shape")
    Kn = out.K
    xi = mat_inv(Kn, [[Kn.coerce(v) for v in r] for r in Km])
    chi = [[Kn.coerce(v) for v in r] for r in chi]
    return label, out, (chi, xi)


# ---------------------------------------------------------------------------
# fixtures in each orbit


def _candidates(c: int):
    """Deterministic stream of degree-c forms with small coefficients."""
    vals = (0, 1, -1, 2, -2)
    for w in range(1, 2 * (c + 1) + 1):
        for cs in itertools.product(vals, repeat=c + 1):
            if sum(abs(a) for a in cs) == w:
                yield BinForm(QQ, c, [mpq(a) for a in cs])


def _pick(c, span, coprime_to):
    for Q in _candidates(c):
        if rank(QQ, [list(f.c) for f in span] + [list(Q.c)]) <= len(span):
            continue
        if coprime_to is not None and bf_gcd(Q, coprime_to).deg > 0:
            continue
        return Q
    raise ValueError("no degree-c form meets the side conditions")


def ecp_fixture(label: str, c: int) -> HBMatrix:
    """A birational representative of the canonical set for ``label``.

    Q1 = x^c and Q2 = y^(c-1)(x+y); the remaining Q's are chosen by a
    deterministic search under the coprimality side conditions."""
    x = BinForm.monomial(QQ, 1, 0)
    y = BinForm.monomial(QQ, 0, 1)
    if c < 1:
        raise ValueError("c must be positive")
    Q1 = x ** c
    Q2 = y ** (c - 1) * (x + y)
    Z = BinForm.zero(QQ, c)
    if label == "(∅,μ4)":
        rows = [[y * x ** (c - 1), x ** c], [x ** c, y ** c], [y ** c, y ** (c - 1) * (x + y)]]
    elif label == "(∅,μ5)":
        if c < 2:
            raise ValueError("(∅,μ5) needs c >= 2")
        rows = [[x ** c, y ** (c - 2) * (x * x + y * y)], [y ** c, y * x ** (c - 1)],
                [y ** (c - 1) * (x + y), x ** c]]
    elif label == "(∅,μ6)":
        if c < 2:
            raise ValueError("(∅,μ6) needs c >= 2")
        rows = [[x ** (c - 2) * (x * x + y * y), y ** (c - 2) * (x * x + y * y)],
                [y ** c, y * x ** (c - 1)], [y ** (c - 1) * (x + y), x ** c]]
    elif label in ("c:c:c", "c:c,c", "c,c,c"):
        Q3 = _pick(c, [Q1, Q2], Q1 * Q2)
        rows = {"c:c:c": [[Q1, Q2], [Q3, Q1], [Z, Q3]],
                "c:c,c": [[Q1, Z], [Q2, Q3], [Z, Q2]],
                "c,c,c": [[Q1, Q1], [Q2, Z], [Z, Q3]]}[label]
    elif label == "c:c":
        Q3 = _pick(c, [Q1, Q2], Q1)
        Q4 = _pick(c, [Q1, Q2, Q3], Q3)
        rows = [[Q1, Q2], [Q3, Q4], [Z, Q3]]
    elif label == "c,c":
        Q3 = _pick(c, [Q1, Q2], Q1)
        Q4 = _pick(c, [Q1, Q2, Q3], Q3 * (Q1 - Q2))
        rows = [[Q1, Q2], [Q3, Q3], [Z, Q4]]
    elif label == "(c,μ4)":
        Q3 = _pick(c, [Q1, Q2], Q1)
        Q4 = _pick(c, [Q1, Q2, Q3], Q1 * Q1 - Q2 * Q3)
        rows = [[Q1, Q2], [Q3, Q1], [Z, Q4]]
    elif label == "(c,μ5)":
        Q3 = _pick(c, [Q1, Q2], Q1)
        Q4 = _pick(c, [Q1, Q2, Q3], Q1 * Q3)
        Q5 = _pick(c, [Q1, Q2, Q3, Q4], Q1 * (Q1 * Q4 - Q2 * Q3))
        rows = [[Q1, Q2], [Q3, Q4], [Z, Q5]]
    elif label == "μ2":
        rows = [[Q1, Z], [Q2, Q1], [Z, Q2]]
    else:
        raise ValueError(f"unknown orbit label {label!r}")
    phi = HBMatrix(rows, (c, c))
    if not in_canonical(label, phi):
        raise ValueError(f"{label} is not realizable at c = {c}")
    if bf_gcd_many([f for f in phi.phi() if not f.is_zero()]).deg > 0:
        raise InternalError(f"fixture for {label} at c={c} has base points")
    return phi
