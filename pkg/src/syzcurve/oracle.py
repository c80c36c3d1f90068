"""Brute-force checks that do not go through the syzygy machinery.

The implicit equation is the resultant, in x and y, of the two column
forms of [T1, T2, T3] * phi.  Singular points of the implicit curve are
found by eliminating T3 from pairs of partial derivatives (sympy does the
elimination and factoring) and lifting each root back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional

import sympy

from .algebra import QQ, ExtElem, ExtNode, InternalError, UniPoly, common_node, upoly_gcd
from .binforms import BinForm
from .mpoly import MPoly, mpoly_det_bareiss
from .syzygy import HBMatrix, ParamTriple, birationality, hb_kernel

__all__ = ["ImplicitCurve", "implicitize", "multiplicity_at", "singular_points_d4",
           "cross_validate", "ValidationReport"]

_T = sympy.symbols("T1 T2 T3")


@dataclass
class ImplicitCurve:
    F: MPoly
    degree: int
    r: int = 1

    def __str__(self):
        return self.F.fmt(["T1", "T2", "T3"])

    def vanishes_on(self, g: ParamTriple) -> bool:
        return self.F.subs_forms([f.coerce(QQ) for f in g.g], g.d * self.degree).is_zero()


def _to_sympy(F: MPoly):
    expr = 0
    for e, c in F.t.items():
        expr += sympy.Rational(int(c.numerator), int(c.denominator)) * _T[0] ** e[0] * _T[1] ** e[1] * _T[2] ** e[2]
    return sympy.Poly(expr, *_T, domain=sympy.QQ)


def _from_sympy(P) -> MPoly:
    from gmpy2 import mpq

    terms = {}
    for mon, c in P.terms():
        c = sympy.Rational(c)
        terms[tuple(int(k) for k in mon)] = mpq(int(c.p), int(c.q))
    return MPoly(QQ, 3, terms)


def _primitive(F: MPoly) -> MPoly:
    """Integer coefficients with gcd 1 and positive leading term."""
    from math import gcd, lcm

    den = 1
    for c in F.t.values():
        den = lcm(den, int(c.denominator))
    num = 0
    for c in F.t.values():
        num = gcd(num, int(c * den))
    s = den / QQ.coerce(num)
    if F.leading()[1] < 0:
        s = -s
    return F * s


def implicitize(g: ParamTriple, phi: HBMatrix | None = None, r: Optional[int] = None) -> ImplicitCurve:
    if phi is None:
        phi = hb_kernel(g)
    d1, d2 = phi.degs
    T = [MPoly.var(QQ, 3, i) for i in range(3)]
    cols = []
    for j, dj in enumerate((d1, d2)):
        # coefficient of x^k y^(dj-k), highest x first
        cols.append([sum((T[i] * QQ.coerce(phi[i, j][k]) for i in range(3)), MPoly(QQ, 3))
                     for k in range(dj, -1, -1)])
    N = d1 + d2
    zero = MPoly(QQ, 3)
    rows = []
    for i in range(d2):
        rows.append([zero] * i + cols[0] + [zero] * (N - d1 - 1 - i))
    for i in range(d1):
        rows.append([zero] * i + cols[1] + [zero] * (N - d2 - 1 - i))
    R = mpoly_det_bareiss(rows)
    if R.is_zero():
        raise InternalError("resultant of the column forms vanishes")
    if r is None:
        r = birationality(g, phi)[0]
    if r == 1:
        return ImplicitCurve(_primitive(R), R.degree(), 1)
    _, facs = _to_sympy(R).factor_list()
    if len(facs) != 1 or facs[0][1] != r:
        raise InternalError(f"resultant is not an {r}-th power of an irreducible form")
    F = _from_sympy(facs[0][0])
    return ImplicitCurve(_primitive(F), F.degree(), r)


def _node_of(vals):
    return common_node(*(v.node if isinstance(v, ExtElem) else QQ for v in vals))


def multiplicity_at(C: ImplicitCurve, p) -> int:
    """Order of vanishing of F at p (0 when p is off the curve)."""
    if C.F.is_zero():
        raise ValueError("zero implicit equation")
    K = _node_of(p)
    p = [K.coerce(v) for v in p]
    i0 = next(i for i in range(3) if not K.is_zero(p[i]))
    # columns: two unit vectors, then p, so v = (0,0,1) maps to p
    cols = [[K.one if r == k else K.zero for r in range(3)] for k in range(3) if k != i0] + [p]
    M = [[cols[j][i] for j in range(3)] for i in range(3)]
    G = MPoly(K, 3, {e: c for e, c in C.F.t.items()}).linear_subs(M)
    if G.is_zero():
        raise InternalError("linear change killed F")
    return min(e[0] + e[1] for e in G.t)


def _partials_at(C: ImplicitCurve, p):
    K = _node_of(p)
    p = [K.coerce(v) for v in p]
    out = []
    for i in range(3):
        D = C.F.partial(i)
        out.append(D.eval(p) if not D.is_zero() else 0)
    return [K.coerce(v) for v in out]


def singular_points_d4(C: ImplicitCurve, seed: int = 0, tries: int = 8) -> int:
    """Number of singular points over the algebraic closure, by
    eliminating T3 from pairs of partials after a random linear change."""
    rng = random.Random(seed)
    F = _to_sympy(C.F).as_expr()
    for _ in range(tries):
        while True:
            M = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            if sympy.Matrix(M).det() != 0:
                break
        sub = {_T[i]: sum(M[i][j] * _T[j] for j in range(3)) for i in range(3)}
        G = sympy.expand(F.xreplace(sub))
        parts = [sympy.Poly(sympy.diff(G, t), *_T) for t in _T]
        if any(p.is_zero for p in parts):
            continue
        lead = [p.as_expr().subs({_T[0]: 0, _T[1]: 0, _T[2]: 1}) for p in parts]
        if any(v == 0 for v in lead[:2]):
            continue
        R1 = sympy.resultant(parts[0].as_expr(), parts[1].as_expr(), _T[2])
        R2 = sympy.resultant(parts[0].as_expr(), parts[2].as_expr(), _T[2])
        if sympy.expand(R1) == 0 or sympy.expand(R2) == 0:
            continue
        H = sympy.gcd(sympy.Poly(R1, _T[0], _T[1]), sympy.Poly(R2, _T[0], _T[1]))
        count = 0
        if H.total_degree() > 0:
            _, facs = sympy.factor_list(H.as_expr(), _T[0], _T[1])
            for h, _e in facs:
                count += _lift_count(sympy.Poly(h, _T[0], _T[1]), parts)
        return count
    raise InternalError("no admissible coordinate change for the singular-point search")


def _lift_count(h, parts) -> int:
    """Points over the roots [t1:t2] of the irreducible binary form h."""
    from gmpy2 import mpq

    def q(c):
        c = sympy.Rational(c)
        return mpq(int(c.p), int(c.q))

    hd = h.total_degree()
    hy = sympy.Poly(h.as_expr().subs(_T[1], 1), _T[0])
    if hy.degree() < hd:
        # h = T2 up to unit: the root is [1:0]
        K, t1, t2 = QQ, QQ.one, QQ.zero
        n = 1
    else:
        low = [q(c) for c in reversed(hy.all_coeffs())]
        u = UniPoly(QQ, low).monic()
        if u.deg == 1:
            K, t1 = QQ, -u.c[0]
        else:
            K = ExtNode(QQ, u, "s", irreducible=True)
            t1 = K.gen
        t2 = K.one
        n = u.deg
    g = None
    for P in parts:
        cs = {}
        for mon, c in P.terms():
            a, b, k = mon
            v = K.coerce(q(c)) * (t1 ** a if a else K.one) * (t2 ** b if b else K.one)
            cs[k] = cs.get(k, K.zero) + v
        top = max(cs) if cs else 0
        up = UniPoly(K, [cs.get(k, K.zero) for k in range(top + 1)])
        g = up if g is None else upoly_gcd(g, up)
    if g.is_zero() or g.deg <= 0:
        return 0
    sq = g.exact_div(upoly_gcd(g, g.derivative()))
    return n * sq.deg


@dataclass
class ValidationReport:
    ok: bool
    checks: dict = field(default_factory=dict)
    diffs: List[str] = field(default_factory=list)


def cross_validate(g: ParamTriple, reports=None, phi: HBMatrix | None = None, seed: int = 0) -> ValidationReport:
    from .singloc import analyze_singularities

    if phi is None:
        phi = hb_kernel(g)
    r, e = birationality(g, phi)
    C = implicitize(g, phi, r)
    rep = ValidationReport(True)
    rep.checks["vanishes"] = C.vanishes_on(g)
    rep.checks["degree"] = C.degree == e
    if r > 1:
        rep.ok = all(rep.checks.values())
        if not rep.ok:
            rep.diffs.append("implicit equation check failed")
        return rep
    if reports is None:
        reports = analyze_singularities(g, phi, tree=False)
    mult_ok = part_ok = True
    for s in reports:
        om = multiplicity_at(C, s.point)
        if om != s.m:
            mult_ok = False
            rep.diffs.append(f"point {s.point_strings()}: oracle multiplicity {om}, reported {s.m}")
        if any(not s.node.is_zero(v) for v in _partials_at(C, s.point)):
            part_ok = False
            rep.diffs.append(f"point {s.point_strings()}: some partial derivative is nonzero")
    rep.checks["multiplicities"] = mult_ok
    rep.checks["partials_vanish"] = part_ok
    if g.d == 4:
        n_or = singular_points_d4(C, seed)
        n_rep = sum(s.conjugacy_count for s in reports)
        rep.checks["singular_count"] = n_or == n_rep
        if n_or != n_rep:
            rep.diffs.append(f"oracle finds {n_or} singular points, report lists {n_rep}")
    rep.ok = all(rep.checks.values())
    if not rep.checks["vanishes"]:
        rep.diffs.append("F(g1, g2, g3) is not identically zero")
    if not rep.checks["degree"]:
        rep.diffs.append(f"implicit degree {C.degree}, expected {e}")
    return rep
