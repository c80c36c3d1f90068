"""Infinitely near points from the Hilbert-Burch matrix.

At a point p whose multiplicity equals one of the column degrees, row and
column operations bring the matrix to

    [[P1, Q1], [P2, Q2], [0, Q3]]

with p moved to [0:0:1].  Points of the first neighborhood are the
directions [a:b] for which gcd(Q3, a*P1 + b*P2) is not constant, and the
degree of that gcd is the multiplicity.  The two affine charts of the
blow-up are again parameterized curves with explicit Hilbert-Burch
matrices, so the construction recurses.

Directions are the roots of W(a, b) = Res(Q3, a*P1 + b*P2), enumerated by
dynamic evaluation; a branch whose modulus never had to split stands for
all of its roots at once, which gives the conjugacy count for free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Sequence

from .algebra import QQ, ExtElem, InternalError, UniPoly, common_node, rref, split_run, upoly_gcd
from .binforms import BinForm, bf_gcd, bf_resultant, bf_squarefree
from .syzygy import HBMatrix

__all__ = [
    "NormalizedHB", "NeighborhoodPoint", "InfNear", "normalize_at_point",
    "blowup_matrices", "direction_form", "first_neighborhood",
    "multiplicity_tree", "sequence_string", "TripleLemmaInapplicable",
]


class TripleLemmaInapplicable(ValueError):
    pass


def _node_of(vals):
    return common_node(*(v.node if isinstance(v, ExtElem) else QQ for v in vals))


@dataclass
class NormalizedHB:
    matrix: HBMatrix
    chi: list
    xi: list
    j: int
    dj: int

    @property
    def P1(self):
        return self.matrix[0, 0]

    @property
    def P2(self):
        return self.matrix[1, 0]

    @property
    def Q1(self):
        return self.matrix[0, 1]

    @property
    def Q2(self):
        return self.matrix[1, 1]

    @property
    def Q3(self):
        return self.matrix[2, 1]

    @property
    def delta(self):
        return self.P1 * self.Q2 - self.P2 * self.Q1


def _point_multiplicity(phi: HBMatrix, p) -> int:
    a, b = phi.row_times(p)
    if a.is_zero() and b.is_zero():
        raise InternalError("p * phi vanishes")
    return bf_gcd(a, b).deg


_CLEANUP = [(b, a) for s in range(0, 7) for b in range(-s, s + 1) for a in range(-s, s + 1)
            if max(abs(a), abs(b)) == s]


def normalize_at_point(phi: HBMatrix, p: Sequence, j: Optional[int] = None) -> NormalizedHB:
    K = common_node(phi.K, _node_of(p))
    phi = phi.coerce(K)
    p = [K.coerce(v) for v in p]
    d1, d2 = phi.degs
    m = _point_multiplicity(phi, p)
    if j is None:
        j = 2 if m == d2 else (1 if m == d1 else None)
    if j is None or m != (d1, d2)[j - 1]:
        raise TripleLemmaInapplicable("Triple Lemma inapplicable at this point")
    i0 = next(i for i in range(3) if not K.is_zero(p[i]))
    chi = [[K.one if c == k else K.zero for c in range(3)] for k in range(3) if k != i0] + [list(p)]
    R = [list(r) for r in _rows(phi, chi)]
    f1, f2 = R[2]
    zero1 = lambda deg: BinForm.zero(K, deg)
    if d1 < d2 and m == d1:
        if f1.is_zero():
            raise InternalError("bottom-left entry vanishes at a point of multiplicity d1")
        h = f2.exact_div(f1)
        R = [[r[1] - r[0] * h, r[0]] for r in R]
        xi = [[-h, BinForm.const(K, 1)], [BinForm.const(K, 1), zero1(0)]]
        degs = (d2, d1)
    elif d1 < d2:
        if not f1.is_zero():
            raise InternalError("bottom-left entry survives at a point of multiplicity d2")
        xi = [[BinForm.const(K, 1), zero1(d2 - d1)], [zero1(0), BinForm.const(K, 1)]]
        degs = (d1, d2)
    else:
        one, z = BinForm.const(K, 1), zero1(0)
        if f2.is_zero():
            R = [[r[1], r[0]] for r in R]
            xi = [[z, one], [one, z]]
        else:
            k = next(i for i in range(f2.deg + 1) if not K.is_zero(f2[i]))
            t = f1[k] * K.inv(f2[k])
            R = [[r[0] - r[1] * t, r[1]] for r in R]
            xi = [[one, z], [BinForm.const(K, -t), one]]
        degs = (d1, d2)
    if not R[2][0].is_zero():
        raise InternalError("column operation failed to clear the bottom-left entry")
    # row cleanup: gcd(P_i, Q_i) = 1 without touching the bottom row
    for i in (0, 1):
        o = 1 - i
        for b, a in _CLEANUP:
            P = R[i][0] + R[o][0] * b if b else R[i][0]
            Q = R[i][1]
            if b:
                Q = Q + R[o][1] * b
            if a:
                Q = Q + R[2][1] * a
            if P.is_zero() or bf_gcd(P, Q).deg:
                continue
            R[i] = [P, Q]
            chi[i] = [chi[i][k] + b * chi[o][k] + a * chi[2][k] for k in range(3)]
            break
        else:
            raise InternalError("row cleanup found no coprime combination")
    M = HBMatrix(R, degs)
    return NormalizedHB(M, chi, xi, j, m)


def _rows(phi: HBMatrix, chi):
    out = []
    for row in chi:
        out.append(phi.row_times(row))
    return out


def blowup_matrices(n: NormalizedHB):
    """Hilbert-Burch matrices of the charts C' and C''."""
    P1, P2, Q3, D = n.P1, n.P2, n.Q3, n.delta
    if D.is_zero():
        raise InternalError("P1*Q2 - P2*Q1 vanishes")
    K = n.matrix.K
    z1 = BinForm.zero(K, P1.deg)
    z2 = BinForm.zero(K, D.deg)
    C1 = HBMatrix([[z1, -D], [P2, z2], [P1, P2 * Q3]])
    C2 = HBMatrix([[z1, D], [P1, z2], [P2, P1 * Q3]])
    return C1, C2


def _interpolate(K, pts, vals):
    """Coefficients (low to high) of the polynomial through (pts, vals)."""
    n = len(pts)
    rows = [[K.coerce(t) ** k for k in range(n)] + [K.coerce(v)] for t, v in zip(pts, vals)]
    R, piv = rref(K, rows)
    if piv != list(range(n)):
        raise InternalError("interpolation nodes are not distinct")
    return [R[i][n] for i in range(n)]


def direction_form(n: NormalizedHB) -> BinForm:
    """W with W.c[i] the coefficient of b^i a^(deg - i) in Res(Q3, aP1 + bP2);
    a root [b:a] of W (x = b, y = a) is a tangent direction [a:b]."""
    K = n.matrix.K
    Q3, P1, P2 = n.Q3, n.P1, n.P2
    k = Q3.deg
    ts = list(range(k + 1))
    vals = [bf_resultant(Q3, P1 + P2 * t) for t in ts]
    return BinForm(K, k, _interpolate(K, ts, vals))


@dataclass
class NeighborhoodPoint:
    direction: tuple
    node: object
    multiplicity: int
    conjugates: int
    chart: Optional[HBMatrix] = None
    chart_point: Optional[tuple] = None


def first_neighborhood(n: NormalizedHB, fn=None) -> List[NeighborhoodPoint]:
    """All first-neighborhood points, one entry per conjugacy class.
    ``fn(point)`` is run inside the branch of each point (so zero tests in
    it may still split the field) and its value stored on ``.extra``."""
    K = n.matrix.K
    W = direction_form(n)
    if W.is_zero():
        raise InternalError("direction form vanishes")
    out = []

    def at(K2, a, b, count):
        Q3 = n.Q3.coerce(K2)
        h = n.P1.coerce(K2) * a + n.P2.coerce(K2) * b
        mult = bf_gcd(Q3, h).deg
        C1, C2 = blowup_matrices(n)
        if not K2.is_zero(a):
            chart, pt = C1.coerce(K2), (K2.zero, b * K2.inv(a), K2.one)
        else:
            chart, pt = C2.coerce(K2), (K2.zero, K2.zero, K2.one)
        q = NeighborhoodPoint((a, b), K2, mult, count, chart, pt)
        if fn is not None:
            q.extra = fn(q)
        return q

    for g, _ in bf_squarefree(W):
        if g.deg == 0:
            continue
        u = g.dehomogenize()
        if u.deg < g.deg:
            # root [1:0] of W, i.e. b = 1, a = 0
            out.append(at(K, K.zero, K.one, 1))
        if u.deg > 0:
            for f, K2, r, res in split_run(K, u.monic(), lambda K2, r: at(K2, K2.one, r, 0), name="b"):
                res.conjugates = f.deg
                out.append(res)
    return out


@dataclass
class InfNear:
    multiplicity: int
    conjugates: int = 1
    children: List["InfNear"] = field(default_factory=list)
    resolved: bool = True

    def weight(self) -> int:
        """Sum of C(m, 2) over this subtree (one member of the class)."""
        return comb(self.multiplicity, 2) + sum(c.conjugates * c.weight() for c in self.children)

    def first_multiplicities(self):
        return [c.multiplicity for c in self.children for _ in range(c.conjugates)]

    def count_at_least(self, m: int) -> int:
        """Infinitely near points (excluding this one) of multiplicity >= m."""
        return sum(c.conjugates * ((c.multiplicity >= m) + c.count_at_least(m)) for c in self.children)

    def is_resolved(self) -> bool:
        return self.resolved and all(c.is_resolved() for c in self.children)


def _sqfree_part(f: BinForm) -> BinForm:
    out = None
    for g, _ in bf_squarefree(f):
        out = g if out is None else out * g
    return out


def _contact(f: BinForm, delta: BinForm) -> int:
    """Total order of vanishing of f at the roots of delta."""
    n = 0
    while True:
        g = bf_gcd(f, delta)
        if g.deg == 0:
            return n
        n += g.deg
        f = f.exact_div(g)


def _param_children(G, m: int, fn):
    """First neighborhood of [0:0:1] on the curve parameterized by the
    coprime triple G, from the chart (G1^2, G2 G3, G1 G3).

    ``fn(T, m2)`` runs inside the branch of each neighborhood point, with T
    the chart triple moved so that point is again [0:0:1]; returns
    ``[(count, fn value)]``."""
    G1, G2, G3 = G
    K = G1.K
    D = bf_gcd(G1, G2)
    # shear T1 -> T1 + s T2 until the line T1 = 0 is tangent to no branch
    for s in [0, 1, -1, 2, -2, 3, -3, 5, 7, 11]:
        H1 = G1 + G2 * s if s else G1
        if _contact(H1, D) == m:
            break
    else:
        raise InternalError("no shear avoids the tangent directions")
    a, b, c = H1 * H1, G2 * G3, H1 * G3
    h = bf_gcd(bf_gcd(a, b), c)
    a, b, c = a.exact_div(h), b.exact_div(h), c.exact_div(h)
    S = _sqfree_part(D)
    n = S.deg
    ts = list(range(n + 1))
    R = UniPoly(K, _interpolate(K, ts, [bf_resultant(S, b - c * t) for t in ts]))
    if R.deg != n:
        raise InternalError("exceptional point at infinity after the shear")
    Rs = R.exact_div(upoly_gcd(R, R.derivative())).monic()

    def at(K2, t):
        A, B, C = a.coerce(K2), b.coerce(K2), c.coerce(K2)
        B = B - C * t
        m2 = bf_gcd(A, B).deg
        if m2 < 1:
            raise InternalError("exceptional point off the strict transform")
        return fn((A, B, C), m2)

    return [(f.deg, res) for f, K2, t, res in split_run(K, Rs, at, name="c")]


def _param_tree(G, m: int, depth: int) -> InfNear:
    node = InfNear(m)
    if m < 2:
        return node
    if depth <= 0:
        node.resolved = False
        return node
    # recursion happens inside each branch so later zero tests can split it
    for count, child in _param_children(G, m, lambda T, m2: _param_tree(T, m2, depth - 1)):
        child.conjugates = count
        node.children.append(child)
    return node


def _tree(phi: HBMatrix, p, m: int, depth: int) -> InfNear:
    node = InfNear(m)
    if m < 2:
        return node
    if depth <= 0:
        node.resolved = False
        return node
    try:
        n = normalize_at_point(phi, p)
    except TripleLemmaInapplicable:
        return _param_tree(_moved_triple(phi, p), m, depth)

    def sub(q: NeighborhoodPoint):
        if q.multiplicity >= 2:
            return _tree(q.chart, q.chart_point, q.multiplicity, depth - 1)
        return InfNear(q.multiplicity)

    for q in first_neighborhood(n, sub):
        child = q.extra
        child.conjugates = q.conjugates
        node.children.append(child)
    return node


def _moved_triple(phi: HBMatrix, p):
    """Parameterization after a linear change sending p to [0:0:1]: the
    two coordinates are p * phi's partners, the third a nonzero one."""
    K = common_node(phi.K, _node_of(p))
    phi = phi.coerce(K)
    p = [K.coerce(v) for v in p]
    i0 = next(i for i in range(3) if not K.is_zero(p[i]))
    others = [k for k in range(3) if k != i0]
    # new coordinates u_k = T_k - (p_k / p_i0) T_i0 vanish at p, u_3 = T_i0
    G = phi.phi()
    inv = K.inv(p[i0])
    u = [G[k] - G[i0] * (p[k] * inv) for k in others]
    return (u[0], u[1], G[i0])


def multiplicity_tree(phi: HBMatrix, p, delta: Optional[int] = None, max_depth: Optional[int] = None,
                      method: str = "auto") -> InfNear:
    """Multiplicity tree at p; ``delta`` is the expected sum of C(m, 2).

    ``method="auto"`` uses the normal form wherever it applies and falls
    back to blowing up the parameterization; ``"param"`` uses only the
    latter, which makes an independent check.  With ``"auto"`` an ordinary
    point (delta = C(m, 2)) is not blown up: one blow-up separates its
    branches into smooth ones, so the tree is m over s simple points."""
    K = common_node(phi.K, _node_of(p))
    a, b = phi.coerce(K).row_times([K.coerce(v) for v in p])
    if a.is_zero() and b.is_zero():
        raise InternalError("p * phi vanishes")
    D = bf_gcd(a, b)
    m = D.deg
    d = sum(phi.degs)
    if max_depth is None:
        max_depth = d
    if method == "auto" and delta is not None and m >= 2 and delta == comb(m, 2):
        s = sum(h.deg for h, _ in bf_squarefree(D))
        return InfNear(m, children=[InfNear(1) for _ in range(s)])
    if method == "param":
        t = _param_tree(_moved_triple(phi, p), m, max_depth)
    elif method == "auto":
        t = _tree(phi, p, m, max_depth)
    else:
        raise ValueError(f"unknown method {method!r}")
    if delta is not None and t.is_resolved() and t.weight() != delta:
        raise InternalError(f"infinitely near multiplicities give delta {t.weight()}, expected {delta}")
    return t


def sequence_string(t: InfNear) -> Optional[str]:
    """Colon/comma notation, e.g. 2:2:2:1,1; None when unresolved.
    A child with its own children is parenthesized when it has siblings."""
    if not t.is_resolved():
        return None

    def s(n: InfNear) -> str:
        kids = [c for c in n.children for _ in range(c.conjugates)]
        if not kids:
            return str(n.multiplicity)
        parts = []
        for c in kids:
            x = s(c)
            parts.append(f"({x})" if len(kids) > 1 and c.children else x)
        return f"{n.multiplicity}:" + ",".join(parts)

    return s(t)
