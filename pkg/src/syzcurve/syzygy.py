"""Validity tests for a parameterization triple and its Hilbert-Burch
matrix.

Two independent constructions are provided.  ``hb_kernel`` searches for
syzygies as nullspace vectors of the convolution matrices A^(i).
``hb_generic_balanced`` evaluates the closed form for balanced even
degree: signed maximal minors of A^(c) assembled into three degree-c
syzygies q1, q2, q3, of which any two (suitably scaled) form the matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Tuple

from gmpy2 import mpq

from .algebra import QQ, InternalError, int_det, nullspace, rank, rref
from .binforms import BinForm, bf_gcd, bf_gcd_many

__all__ = [
    "ParamTriple", "HBMatrix", "phi", "build_convolution", "is_balanced",
    "hb_generic_balanced", "hb_kernel", "base_point_free", "birationality",
    "syzygies", "eagon_northcott_columns", "zz_residuals",
]


@dataclass(frozen=True)
class ParamTriple:
    g: Tuple[BinForm, BinForm, BinForm]

    def __post_init__(self):
        if len(self.g) != 3:
            raise ValueError("a parameterization needs exactly three forms")
        degs = {f.deg for f in self.g}
        if len(degs) != 1:
            raise ValueError(f"forms of unequal degree {sorted(degs)}")
        if all(f.is_zero() for f in self.g):
            raise ValueError("all three forms vanish")

    @property
    def d(self) -> int:
        return self.g[0].deg

    @classmethod
    def of(cls, *forms) -> "ParamTriple":
        return cls(tuple(forms))

    def __iter__(self):
        return iter(self.g)

    def __getitem__(self, i):
        return self.g[i]

    def at(self, a, b):
        """Psi(q) for q = [a:b]."""
        return tuple(f(a, b) for f in self.g)

    def substitute(self, a, b, c, d) -> "ParamTriple":
        return ParamTriple(tuple(f.substitute(a, b, c, d) for f in self.g))


class HBMatrix:
    """3x2 matrix of binary forms; column k homogeneous of degree degs[k]."""

    __slots__ = ("e", "degs", "K")

    def __init__(self, entries, degs=None):
        e = tuple(tuple(row) for row in entries)
        if len(e) != 3 or any(len(r) != 2 for r in e):
            raise ValueError("Hilbert-Burch matrix must be 3x2")
        if degs is None:
            degs = (e[0][0].deg, e[0][1].deg)
        for r in e:
            for k in range(2):
                if r[k].deg != degs[k]:
                    raise ValueError("column entries of unequal degree")
        from .algebra import common_node
        K = common_node(*(f.K for r in e for f in r))
        self.e = tuple(tuple(f.coerce(K) for f in r) for r in e)
        self.degs = tuple(degs)
        self.K = K

    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def col(self, j):
        return [self.e[i][j] for i in range(3)]

    def row_times(self, p: Sequence):
        """The two forms of p * phi."""
        out = []
        for j in range(2):
            acc = BinForm.zero(self.K, self.degs[j])
            for i in range(3):
                if p[i]:
                    acc = acc + self.e[i][j] * p[i]
            out.append(acc)
        return out

    def phi(self):
        return phi(self.e)

    def coerce(self, K) -> "HBMatrix":
        return HBMatrix([[f.coerce(K) for f in r] for r in self.e], self.degs)

    def swap_columns(self) -> "HBMatrix":
        return HBMatrix([[r[1], r[0]] for r in self.e], (self.degs[1], self.degs[0]))

    def scale_column(self, j, s) -> "HBMatrix":
        rows = [list(r) for r in self.e]
        for r in rows:
            r[j] = r[j] * s
        return HBMatrix(rows, self.degs)

    def substitute(self, a, b, c, d) -> "HBMatrix":
        return HBMatrix([[f.substitute(a, b, c, d) for f in r] for r in self.e], self.degs)

    def entries_str(self):
        return [[f.to_str() for f in r] for r in self.e]

    def __repr__(self):
        return f"HBMatrix({self.entries_str()}, degs={self.degs})"


def phi(e):
    """Signed 2x2 minors (det rows 2,3; -det rows 1,3; det rows 1,2)."""
    (a, b), (c, d), (f, g) = e
    return (c * g - d * f, -(a * g - b * f), a * d - b * c)


# ---------------------------------------------------------------------------
# convolution matrices


def _coeffs(g: ParamTriple):
    return [[f.coerce(QQ)[i] for i in range(g.d + 1)] for f in g.g]


def build_convolution(g: ParamTriple, i: int):
    """A^(i): (d+i+1) x 3(i+1); row r, column k of block j holds z_{r-k,j}."""
    if i < 0:
        raise ValueError("syzygy degree must be >= 0")
    d = g.d
    z = _coeffs(g)
    rows = []
    for r in range(d + i + 1):
        row = []
        for j in range(3):
            for k in range(i + 1):
                t = r - k
                row.append(z[j][t] if 0 <= t <= d else mpq(0))
        rows.append(row)
    return rows


def vector_to_triple(b: Sequence, i: int, K=QQ):
    """Coefficient blocks -> (q1, q2, q3) of degree i."""
    return [BinForm(K, i, list(b[j * (i + 1):(j + 1) * (i + 1)])) for j in range(3)]


def triple_to_vector(q: Sequence[BinForm]):
    out = []
    for f in q:
        out.extend(f.c)
    return out


def syzygies(g: ParamTriple, i: int):
    """Basis of the degree-i syzygies, as form triples."""
    N = nullspace(QQ, build_convolution(g, i), 3 * (i + 1))
    return [vector_to_triple(v, i) for v in N]


def base_point_free(g: ParamTriple) -> bool:
    return bf_gcd_many(list(g.g)).deg == 0


def _normalize_unit(cols, degs, g: ParamTriple) -> HBMatrix:
    M = HBMatrix([[cols[0][k], cols[1][k]] for k in range(3)], degs)
    P = M.phi()
    u = None
    for Pk, gk in zip(P, g.g):
        for a, b in zip(Pk.c, gk.coerce(M.K).c):
            if b:
                u = a / b
                break
        if u is not None:
            break
    if u is None or not u:
        raise InternalError("signed minors vanish identically")
    M = M.scale_column(1, 1 / u)
    if tuple(M.phi()) != tuple(f.coerce(M.K) for f in g.g):
        raise InternalError("signed minors are not a unit multiple of the triple")
    return M


def hb_kernel(g: ParamTriple) -> HBMatrix:
    """Hilbert-Burch matrix from nullspaces of the convolution matrices."""
    if not base_point_free(g):
        raise ValueError("base points present")
    d = g.d
    d1 = None
    for i in range(0, d + 1):
        N = nullspace(QQ, build_convolution(g, i), 3 * (i + 1))
        if N:
            d1 = i
            s1 = N[0]
            break
    if d1 is None:
        raise InternalError("no syzygy found up to degree d")
    d2 = d - d1
    q1 = vector_to_triple(s1, d1)
    N2 = nullspace(QQ, build_convolution(g, d2), 3 * (d2 + 1))
    k = d2 - d1
    mults = []
    for a in range(k + 1):
        m = BinForm.monomial(QQ, a, k - a)
        mults.append(triple_to_vector([f * m for f in q1]))
    base = rank(QQ, mults)
    s2 = None
    for v in N2:
        if rank(QQ, mults + [v]) > base:
            s2 = v
            break
    if s2 is None:
        raise InternalError("second syzygy not found")
    q2 = vector_to_triple(s2, d2)
    return _normalize_unit([q1, q2], (d1, d2), g)


# ---------------------------------------------------------------------------
# balanced closed form


def is_balanced(g: ParamTriple):
    """(balanced?, w) with w = det A^(c-1)."""
    if g.d % 2:
        raise ValueError("balancedness undefined for odd degree")
    c = g.d // 2
    w = int_det(build_convolution(g, c - 1))
    return (w != 0), w


def eagon_northcott_columns(A, c: int, minor):
    """The three relations b^(m), m in {1, c+2, 2c+3} (1-based), on the
    (3c+1) x (3c+3) matrix A.  ``minor(cols)`` returns the determinant of A
    restricted to the 0-based column list ``cols``."""
    ncol = 3 * c + 3
    out = []
    for m in (1, c + 2, 2 * c + 3):
        b = []
        for k in range(1, ncol + 1):
            if k == m:
                b.append(None)
                continue
            i, j = min(k, m), max(k, m)
            cols = [t for t in range(ncol) if t not in (i - 1, j - 1)]
            v = minor(cols)
            if k < m:
                sgn = (-1) ** (k + 1)
            else:
                sgn = (-1) ** k
            b.append(v if sgn == 1 else -v)
        out.append(b)
    return out


def _q_from_b(b, c, zero):
    """Entry r of q is sum_i b_{r(c+1)+i+1} x^i y^(c-i), as coefficient lists."""
    q = []
    for r in range(3):
        coeffs = []
        for i in range(c + 1):
            v = b[r * (c + 1) + i]
            coeffs.append(zero if v is None else v)
        q.append(coeffs)
    return q


def _conv(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if _nz(u):
            for j, v in enumerate(b):
                if _nz(v):
                    out[i + j] = out[i + j] + u * v
    return out


def _nz(v) -> bool:
    return not v.is_zero() if hasattr(v, "is_zero") and not isinstance(v, type(mpq(0))) else bool(v)


def _phi_lists(cols, zero):
    """Signed minors of a 3x2 matrix given as two columns of coefficient lists."""
    def sub(a, b):
        return [x - y for x, y in zip(a, b)]
    (a, c_, f), (b, d, g) = cols
    m1 = sub(_conv(c_, g, zero), _conv(d, f, zero))
    m2 = sub(_conv(b, f, zero), _conv(a, g, zero))
    m3 = sub(_conv(a, d, zero), _conv(b, c_, zero))
    return [m1, m2, m3]


def _generic_qs(g: ParamTriple):
    c = g.d // 2
    A = build_convolution(g, c)
    cache = {}

    def minor(cols):
        key = tuple(cols)
        if key not in cache:
            cache[key] = int_det([[row[t] for t in cols] for row in A])
        return cache[key]

    bs = eagon_northcott_columns(A, c, minor)
    return [_q_from_b(b, c, mpq(0)) for b in bs]


def hb_generic_balanced(g: ParamTriple) -> HBMatrix:
    """Closed-form Hilbert-Burch matrix for balanced even degree."""
    bal, w = is_balanced(g)
    if not bal:
        raise ValueError("unbalanced, use hb_kernel")
    c = g.d // 2
    z0 = [f.coerce(QQ)[0] for f in g.g]
    if all(v == 0 for v in z0):
        # y^d coefficients all vanish: move a root away from [0:1]
        g2 = g.substitute(1, 0, 1, 1)
        if all(f[0] == 0 for f in g2.g):
            raise InternalError("coordinate change did not produce a nonzero y^d coefficient")
        return hb_generic_balanced(g2).substitute(1, 0, -1, 1)
    j = next(k for k in range(3) if z0[k] != 0) + 1
    qs = _generic_qs(g)
    keep = [qs[k] for k in range(3) if k != j - 1]
    s = mpq((-1) ** (j * c + 1)) / (w * w * z0[j - 1])
    cols = [[BinForm(QQ, c, [v * s for v in e]) for e in keep[0]],
            [BinForm(QQ, c, e) for e in keep[1]]]
    M = HBMatrix([[cols[0][k], cols[1][k]] for k in range(3)], (c, c))
    if tuple(M.phi()) != tuple(g.g):
        raise InternalError("closed-form matrix does not reproduce the triple")
    return M


def zz_residuals(c: int, z=None):
    """Check Phi(d2^(j)) = (-1)^(jc+1) z_{0,j} w^2 (G1, G2, G3), j = 1, 2, 3.

    With ``z`` None the check is symbolic in the 3(2c+1) indeterminates
    z_{i,j}; otherwise ``z[j][i]`` are rational values.  Returns a list of
    three booleans (one per j) and w."""
    from .mpoly import LaplaceMinors, MPoly

    d = 2 * c
    if z is None:
        nv = 3 * (d + 1)
        Z = [[MPoly.var(QQ, nv, j * (d + 1) + i) for i in range(d + 1)] for j in range(3)]
        zero = MPoly._raw(QQ, nv, {})
        one = MPoly.const(QQ, nv, 1)
    else:
        Z = [[mpq(v) for v in col] for col in z]
        zero, one = mpq(0), mpq(1)

    def conv_matrix(i):
        rows = []
        for r in range(d + i + 1):
            row = []
            for j in range(3):
                for k in range(i + 1):
                    t = r - k
                    row.append(Z[j][t] if 0 <= t <= d else zero)
            rows.append(row)
        return rows

    A = conv_matrix(c)
    Aw = conv_matrix(c - 1)
    if z is None:
        lm = LaplaceMinors(A, zero, one)
        minor = lm.minor
        w = LaplaceMinors(Aw, zero, one).minor(range(3 * c))
    else:
        cache = {}

        def minor(cols):
            key = tuple(cols)
            if key not in cache:
                cache[key] = int_det([[row[t] for t in cols] for row in A])
            return cache[key]
        w = int_det(Aw)
    bs = eagon_northcott_columns(A, c, minor)
    qs = [_q_from_b(b, c, zero) for b in bs]
    w2 = w * w
    ok = []
    for j in range(1, 4):
        keep = [qs[k] for k in range(3) if k != j - 1]
        lhs = _phi_lists(keep, zero)
        sgn = (-1) ** (j * c + 1)
        coef = Z[j - 1][0] * w2
        if sgn < 0:
            coef = -coef
        good = True
        for k in range(3):
            rhs = [coef * v for v in Z[k]]
            for a, b in zip(lhs[k], rhs):
                diff = a - b
                if _nz(diff):
                    good = False
                    break
            if not good:
                break
        ok.append(good)
    return ok, w


# ---------------------------------------------------------------------------
# birationality


def _solve_e(d: int, rho: int) -> int:
    full = comb(d + 1, 2)
    for e in range(1, d + 1):
        if full - comb(d - e + 1, 2) == rho:
            return e
    raise InternalError(f"rank {rho} matches no implicit degree for d = {d}")


def birationality(g: ParamTriple, phi_matrix: HBMatrix | None = None, seed: int = 0):
    """(r, e) with r*e = d; r = 1 iff the parameterization is birational."""
    if not base_point_free(g):
        raise ValueError("base points present")
    d = g.d
    forms = [f.coerce(QQ) for f in g.g]
    prods = []
    pw = [[BinForm.const(QQ, 1)] for _ in range(3)]
    for k in range(3):
        for _ in range(d - 1):
            pw[k].append(pw[k][-1] * forms[k])
    for i in range(d):
        for j in range(d - i):
            k = d - 1 - i - j
            prods.append(list((pw[0][i] * pw[1][j] * pw[2][k]).c))
    rho = rank(QQ, prods)
    e = _solve_e(d, rho)
    if d % e:
        raise InternalError("implicit degree does not divide d")
    r = d // e
    M = phi_matrix if phi_matrix is not None else hb_kernel(g)
    rng = random.Random(seed)
    for _ in range(4):
        while True:
            a, b = rng.randint(-20, 20), rng.randint(-20, 20)
            if a == 0 and b == 0:
                continue
            p = g.at(mpq(a), mpq(b))
            row = M.row_times(p)
            if any(f.is_zero() for f in row):
                continue
            break
        if bf_gcd(row[0], row[1]).deg == r:
            return r, e
    raise InternalError("fiber-degree check disagrees with the rank computation")
