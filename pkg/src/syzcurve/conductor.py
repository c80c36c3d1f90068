"""The conductor of a rational plane curve read off its syzygies.

The degree-d part of the coordinate ring of the curve is presented by a
matrix of linear forms in T1, T2, T3.  Completing g1, g2, g3 to a basis of
the degree-d forms and multiplying by the adjugate of the change of basis
isolates M_g, a (d-2) x (d+2) matrix whose maximal minors, evaluated at
T = g, generate c_g^(d-2) times a power of the maximal ideal.  Their gcd
c_g is a form of degree (d-1)(d-2) whose roots are exactly the
parameters of singular points.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .algebra import QQ, InternalError, det, mat_inv, rank
from .binforms import BinForm, bf_factor_Q, bf_gcd_many
from .mpoly import LaplaceMinors
from .syzygy import HBMatrix, ParamTriple, hb_kernel

__all__ = ["TLinMatrix", "ConductorResult", "build_Mprime", "completion_matrix",
           "build_Mg", "conductor_gcd", "delta_invariants"]


@dataclass(frozen=True)
class TLinMatrix:
    """Matrix whose entries are linear forms in T1, T2, T3, each stored as
    its coefficient vector (a1, a2, a3)."""

    rows: Tuple[Tuple[Tuple, ...], ...]

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def at_forms(self, g: Sequence[BinForm]):
        """Substitute T_i <- g_i; returns a matrix of binary forms."""
        d = g[0].deg
        out = []
        for row in self.rows:
            r = []
            for v in row:
                acc = BinForm.zero(QQ, d)
                for a, f in zip(v, g):
                    if a:
                        acc = acc + f * a
                r.append(acc)
            out.append(r)
        return out

    def to_strings(self):
        out = []
        for row in self.rows:
            r = []
            for v in row:
                terms = []
                for a, t in zip(v, ("T1", "T2", "T3")):
                    if a:
                        s = str(a)
                        terms.append(t if s == "1" else ("-" + t if s == "-1" else f"{s}*{t}"))
                r.append(" + ".join(terms).replace("+ -", "- ") if terms else "0")
            out.append(r)
        return out


@dataclass(frozen=True)
class ConductorResult:
    c_g: BinForm
    generators: Tuple[BinForm, ...]
    factors: Tuple[Tuple[BinForm, int], ...]

    @property
    def degree(self) -> int:
        return self.c_g.deg


def build_Mprime(phi: HBMatrix) -> TLinMatrix:
    """M' with [T1,T2,T3] phi N = rho^(d) M', N = diag(rho^(d2), rho^(d1))."""
    d1, d2 = phi.degs
    d = d1 + d2
    zero = (QQ.zero,) * 3
    cols = []
    # T.phi[:,0] (degree d1) times monomials of degree d2, then column 2
    for j, other in ((0, d2), (1, d1)):
        for k in range(other + 1):
            col = []
            for r in range(d + 1):
                s = r - k
                if 0 <= s <= phi.degs[j]:
                    col.append(tuple(QQ.coerce(phi[i, j][s]) for i in range(3)))
                else:
                    col.append(zero)
            cols.append(col)
    return TLinMatrix(tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(d + 1)))


def completion_matrix(g: ParamTriple):
    """E' whose columns are g1, g2, g3 followed by the standard monomials
    x^i y^(d-i), i decreasing, that enlarge the span."""
    d = g.d
    cols = [[QQ.coerce(f[i]) for i in range(d + 1)] for f in g.g]
    if rank(QQ, cols) < 3:
        raise ValueError("g1, g2, g3 are linearly dependent")
    for i in range(d, -1, -1):
        if len(cols) == d + 1:
            break
        e = [QQ.one if k == i else QQ.zero for k in range(d + 1)]
        if rank(QQ, cols + [e]) > len(cols):
            cols.append(e)
    return [[cols[j][r] for j in range(d + 1)] for r in range(d + 1)]


def _adjugate(M):
    D = det(QQ, M)
    inv = mat_inv(QQ, M)
    return [[D * v for v in row] for row in inv]


def build_Mg(g: ParamTriple, phi: HBMatrix | None = None) -> TLinMatrix:
    """(Adj(E') M') with its first three rows removed."""
    if g.d < 3:
        raise ValueError("M_g needs degree at least 3")
    if phi is None:
        phi = hb_kernel(g)
    Mp = build_Mprime(phi)
    E = _adjugate(completion_matrix(g))
    nc = Mp.shape[1]
    rows = []
    for r in range(3, g.d + 1):
        row = []
        for c in range(nc):
            acc = [QQ.zero] * 3
            for s, e in enumerate(E[r]):
                if e:
                    v = Mp.rows[s][c]
                    for t in range(3):
                        if v[t]:
                            acc[t] += e * v[t]
            row.append(tuple(acc))
        rows.append(tuple(row))
    return TLinMatrix(tuple(rows))


def conductor_gcd(g: ParamTriple, phi: HBMatrix | None = None) -> ConductorResult:
    d = g.d
    if d < 3:
        one = BinForm.const(QQ, 1)
        return ConductorResult(one, (one,), ())
    Mg = build_Mg(g, phi)
    F = Mg.at_forms(g.g)
    k = d - 2
    # one memoized expansion serves every maximal minor
    lap = LaplaceMinors(F, BinForm.zero(QQ, 0), BinForm.const(QQ, 1))
    minors = []
    for cols in combinations(range(d + 2), k):
        m = lap.minor(cols)
        if not m.is_zero():
            minors.append(m)
    if not minors:
        raise InternalError("all maximal minors of M_g vanish")
    c = bf_gcd_many(minors)
    if c.deg != (d - 1) * (d - 2):
        raise InternalError(f"conductor gcd has degree {c.deg}, expected {(d - 1) * (d - 2)}")
    gens, vecs = [], []
    for m in minors:
        qv = list(m.exact_div(c).c)
        if rank(QQ, vecs + [qv]) > len(vecs):
            vecs.append(qv)
            gens.append(m)
    if len(gens) != d - 1:
        raise InternalError(f"quotients by c_g span dimension {len(gens)}, expected {d - 1}")
    return ConductorResult(c, tuple(gens), tuple(bf_factor_Q(c)))


def delta_invariants(res: ConductorResult, fibers: Sequence[Sequence[Tuple[int, int]]]) -> List[int]:
    """delta for each fiber, given as [(factor index, number of its roots
    in the fiber)]: half the sum of the c_g exponents over the fiber."""
    out = []
    for fib in fibers:
        s = sum(k * res.factors[i][1] for i, k in fib)
        if s % 2:
            raise InternalError("odd exponent sum over a fiber")
        if s == 0:
            raise InternalError("empty fiber")
        out.append(s // 2)
    return out
