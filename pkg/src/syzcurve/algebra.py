"""Exact arithmetic: rationals, univariate polynomials over a coefficient
field node, squarefree decomposition, factorization over Q, and towers of
quotient rings Q[t1]/(m1)[t2]/(m2)... handled by dynamic evaluation.

A coefficient field is a *node*.  ``QQ`` is the base node; ``ExtNode``
adjoins a root of a monic squarefree polynomial over its parent.  The
modulus need not be irreducible: when an inversion or zero test meets a
zero divisor, a :class:`SplitEvent` is raised carrying the discovered
factorization, and the caller reruns the computation on each factor.

Zero tests must go through ``node.is_zero``.  Python truthiness of an
element is *structural* (is the residue literally zero) and never splits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

import flint
import gmpy2
from gmpy2 import mpq

__all__ = [
    "Rational", "QQ", "QQField", "ExtNode", "ExtElem", "SplitEvent",
    "UniPoly", "upoly_gcd", "upoly_xgcd", "squarefree_decomposition",
    "factor_over_Q", "split_run", "InternalError",
    "rref", "nullspace", "rank", "det", "bareiss_det", "solve_left",
    "identity", "transpose", "mat_mul", "mat_inv", "split_first",
]

Rational = type(mpq(0))


# flint does the heavy univariate work over Q (inverses in number fields)
def _to_fmpq_poly(cs):
    return flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in cs])


def _from_fmpq_poly(p):
    return [mpq(int(c.p), int(c.q)) for c in p.coeffs()]


class InternalError(RuntimeError):
    """A mathematical invariant that must hold was violated."""


def to_rational(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


# ---------------------------------------------------------------------------
# coefficient nodes


class QQField:
    """The base node: the rational numbers."""

    depth = 0
    parent = None
    is_field = True
    name = "QQ"
    degree_over_q = 1

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __repr__(self):
        return "QQ"

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def coerce(self, x):
        if isinstance(x, ExtElem):
            raise TypeError("cannot coerce an extension element into QQ")
        return to_rational(x)

    def ancestors(self):
        return [self]

    def is_ancestor_of(self, other) -> bool:
        return True

    def fmt(self, a) -> str:
        return str(a)


QQ = QQField()


class SplitEvent(Exception):
    """A modulus turned out to be reducible.

    ``factors`` are monic polynomials over ``node.parent`` whose product is
    ``node.modulus``.
    """

    def __init__(self, node: "ExtNode", factors: tuple):
        super().__init__(node, factors)
        self.node = node
        self.factors = tuple(factors)

    def __str__(self):
        return f"split of {self.node.name}: {[str(f) for f in self.factors]}"

    def descendants(self):
        """One (node, root) pair per factor, in factor order."""
        out = []
        for f in self.factors:
            if f.deg == 1:
                out.append((self.node.parent, -f.c[0]))
            else:
                k = ExtNode(self.node.parent, f, self.node.name)
                out.append((k, k.gen))
        return out


class ExtNode:
    """parent[t]/(modulus) with modulus monic, squarefree, degree >= 2.

    ``irreducible=True`` is a promise made by the caller (e.g. the modulus
    came out of :func:`factor_over_Q`); it lets zero tests skip the gcd.
    """

    def __init__(self, parent, modulus: "UniPoly", name: str = "t", irreducible: bool = False):
        if modulus.K is not parent:
            raise ValueError("modulus must be a polynomial over the parent node")
        if modulus.deg < 2:
            raise ValueError("modulus must have degree >= 2")
        if not parent.is_zero(modulus.c[-1] - parent.one):
            raise ValueError("modulus must be monic")
        self.parent = parent
        self.modulus = modulus
        self.name = name
        self.n = modulus.deg
        self.depth = parent.depth + 1
        self.irreducible = bool(irreducible) and parent.is_field
        self.is_field = self.irreducible
        self.degree_over_q = parent.degree_over_q * self.n
        pz = parent.zero
        self._m = tuple(modulus.c)
        self._fm = None
        self.zero = ExtElem(self, (pz,) * self.n)
        self.one = ExtElem(self, (parent.one,) + (pz,) * (self.n - 1))
        self.gen = ExtElem(self, (pz, parent.one) + (pz,) * (self.n - 2))

    def __repr__(self):
        return f"{self.parent!r}[{self.name}]/({self.modulus.fmt(self.name)})"

    def ancestors(self):
        return self.parent.ancestors() + [self]

    def is_ancestor_of(self, other) -> bool:
        k = other
        while k is not None:
            if k is self:
                return True
            k = k.parent
        return False

    # element construction -------------------------------------------------
    def from_residue(self, coeffs: Sequence) -> "ExtElem":
        """Element from an arbitrary polynomial in the generator (reduced)."""
        P = self.parent
        cs = [P.coerce(c) for c in coeffs]
        return ExtElem(self, self._reduce(cs))

    def _reduce(self, cs: list) -> tuple:
        n = self.n
        m = self._m
        for i in range(len(cs) - 1, n - 1, -1):
            c = cs[i]
            if c:
                base = i - n
                for k in range(n):
                    if m[k]:
                        cs[base + k] = cs[base + k] - c * m[k]
        cs = cs[:n]
        if len(cs) < n:
            cs = cs + [self.parent.zero] * (n - len(cs))
        return tuple(cs)

    def coerce(self, x) -> "ExtElem":
        if isinstance(x, ExtElem):
            if x.node is self:
                return x
            if x.node.depth >= self.depth or not x.node.is_ancestor_of(self):
                raise TypeError(f"cannot coerce element of {x.node!r} into {self!r}")
        v = self.parent.coerce(x)
        return ExtElem(self, (v,) + (self.parent.zero,) * (self.n - 1))

    # semantics --------------------------------------------------------------
    def residue_poly(self, a: "ExtElem") -> "UniPoly":
        return UniPoly(self.parent, a.c)

    def is_zero(self, a) -> bool:
        a = self.coerce(a)
        if not any(a.c):
            return True
        if self.irreducible:
            return False
        if a._unit:
            return False
        g = upoly_gcd(self.residue_poly(a), self.modulus)
        if g.deg == 0:
            object.__setattr__(a, "_unit", True)
            return False
        raise SplitEvent(self, (g, self.modulus.exact_div(g)))

    def inv(self, a) -> "ExtElem":
        a = self.coerce(a)
        if not any(a.c):
            raise ZeroDivisionError("inverse of zero residue")
        if self.parent is QQ:
            return self._inv_flint(a)
        g, s = _half_xgcd(self.residue_poly(a), self.modulus)
        if g.deg > 0:
            raise SplitEvent(self, (g, self.modulus.exact_div(g)))
        # g is monic of degree 0, i.e. 1
        return self.from_residue(s.c)

    def _inv_flint(self, a):
        if self._fm is None:
            self._fm = _to_fmpq_poly(self._m)
        g, s, _ = _to_fmpq_poly(a.c).xgcd(self._fm)
        if g.degree() > 0:
            gq = UniPoly(QQ, _from_fmpq_poly(g))
            raise SplitEvent(self, (gq, self.modulus.exact_div(gq)))
        cs = _from_fmpq_poly(s)
        return ExtElem(self, tuple(cs) + (QQ.zero,) * (self.n - len(cs)))

    def fmt(self, a) -> str:
        return UniPoly(self.parent, self.coerce(a).c).fmt(self.name)


class ExtElem:
    """Residue class in an :class:`ExtNode`; immutable."""

    __slots__ = ("node", "c", "_unit")

    def __init__(self, node: ExtNode, c: tuple):
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "_unit", False)

    def __setattr__(self, k, v):
        raise AttributeError("ExtElem is immutable")

    def _lift(self, other):
        if isinstance(other, ExtElem):
            if other.node is self.node:
                return other
            if other.node.depth > self.node.depth:
                return None
        return self.node.coerce(other)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return False
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((id(self.node), self.c))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.node, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.node, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._lift(other)
        return ExtElem(self.node, tuple(b - a for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return ExtElem(self.node, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, ExtElem):
            if other.node is not self.node:
                if other.node.depth > self.node.depth:
                    return NotImplemented
                other = self.node.coerce(other)
            a, b = self.c, other.c
            node = self.node
            if node.parent is QQ and node.n > 4:
                if node._fm is None:
                    node._fm = _to_fmpq_poly(node._m)
                cs = _from_fmpq_poly((_to_fmpq_poly(a) * _to_fmpq_poly(b)) % node._fm)
                return ExtElem(node, tuple(cs) + (QQ.zero,) * (node.n - len(cs)))
            prod = [self.node.parent.zero] * (2 * len(a) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] = prod[i + j] + ai * bj
            return ExtElem(self.node, self.node._reduce(prod))
        # scalar from an ancestor
        s = self.node.parent.coerce(other)
        return ExtElem(self.node, tuple(a * s for a in self.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * self.node.inv(o)

    def __rtruediv__(self, other):
        return self.node.coerce(other) * self.node.inv(self)

    def __pow__(self, e: int):
        if e < 0:
            return self.node.inv(self) ** (-e)
        r = self.node.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __repr__(self):
        return self.node.fmt(self)

    __str__ = __repr__


def common_node(*nodes):
    """Deepest node among ``nodes``; they must lie on one tower."""
    best = QQ
    for k in nodes:
        if k.depth > best.depth:
            if not best.is_ancestor_of(k):
                raise TypeError("nodes are not on a common tower")
            best = k
        elif not k.is_ancestor_of(best):
            raise TypeError("nodes are not on a common tower")
    return best


def split_run(parent, h: "UniPoly", fn: Callable, name: str = "t", irreducible: bool = False):
    """Run ``fn(K, root)`` at a root of the squarefree monic ``h`` over
    ``parent``, splitting on demand.

    Returns a list of ``(factor, K, root, result)`` whose factors multiply
    to ``h``.  Split events for nodes other than the one created here are
    propagated to the caller.
    """
    todo = [h]
    out = []
    while todo:
        f = todo.pop(0)
        if f.deg == 1:
            K, r = parent, -f.c[0]
        else:
            K = ExtNode(parent, f, name, irreducible=irreducible and f is h)
            r = K.gen
        try:
            res = fn(K, r)
        except SplitEvent as ev:
            if ev.node is K:
                todo = list(ev.factors) + todo
                continue
            raise
        out.append((f, K, r, res))
    return out


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial over a node; ``c[i]`` is the coefficient
    of t^i.  Leading coefficient is a unit (or the polynomial is zero)."""

    __slots__ = ("K", "c")

    def __init__(self, K, coeffs: Iterable = ()):
        cs = [K.coerce(a) for a in coeffs] if K is not QQ else [to_rational(a) for a in coeffs]
        while cs and K.is_zero(cs[-1]):
            cs.pop()
        self.K = K
        self.c = tuple(cs)

    @classmethod
    def _raw(cls, K, cs):
        p = cls.__new__(cls)
        p.K = K
        p.c = tuple(cs)
        return p

    @classmethod
    def _strip(cls, K, cs: list):
        while cs and K.is_zero(cs[-1]):
            cs.pop()
        return cls._raw(K, cs)

    @classmethod
    def monomial(cls, K, k: int, coeff=1):
        return cls(K, [K.zero] * k + [K.coerce(coeff)])

    @classmethod
    def x(cls, K=QQ):
        return cls(K, [0, 1])

    # basic queries ------------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.c) - 1  # -1 stands for -inf

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        return self.c[-1] if self.c else self.K.zero

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.c) != len(other.c):
            return False
        return all(self.K.is_zero(a - b) for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(tuple(str(a) for a in self.c))

    def coerce(self, K) -> "UniPoly":
        if K is self.K:
            return self
        return UniPoly(K, [K.coerce(a) for a in self.c])

    # arithmetic ---------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, UniPoly):
            o = UniPoly(self.K, [o])
        K = self.K
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, bi in enumerate(b):
            cs[i] = cs[i] + bi
        return UniPoly._strip(K, cs)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(self.K, [-a for a in self.c])

    def __sub__(self, o):
        if not isinstance(o, UniPoly):
            o = UniPoly(self.K, [o])
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        K = self.K
        if not isinstance(o, UniPoly):
            s = K.coerce(o)
            return UniPoly._strip(K, [a * s for a in self.c])
        a, b = self.c, o.c
        if not a or not b:
            return UniPoly._raw(K, [])
        cs = [K.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        cs[i + j] = cs[i + j] + ai * bj
        return UniPoly._strip(K, cs)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = UniPoly(self.K, [self.K.one])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def divmod(self, d: "UniPoly"):
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        K = self.K
        inv = K.inv(d.c[-1])
        r = list(self.c)
        n = d.deg
        if len(r) - 1 < n:
            return UniPoly._raw(K, []), self
        q = [K.zero] * (len(r) - n)
        dc = d.c
        for i in range(len(r) - 1, n - 1, -1):
            c = r[i]
            if not c:
                continue
            f = c * inv
            q[i - n] = f
            for k in range(n + 1):
                if dc[k]:
                    r[i - n + k] = r[i - n + k] - f * dc[k]
        return UniPoly._strip(K, q), UniPoly._strip(K, r[:n])

    def __mod__(self, d):
        return self.divmod(d)[1]

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def exact_div(self, d: "UniPoly") -> "UniPoly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.K.inv(self.c[-1])
        return UniPoly._raw(self.K, [a * inv for a in self.c[:-1]] + [self.K.one])

    def derivative(self) -> "UniPoly":
        return UniPoly._strip(self.K, [a * i for i, a in enumerate(self.c)][1:])

    def __call__(self, v):
        r = self.K.zero if not isinstance(v, ExtElem) else v.node.zero
        for a in reversed(self.c):
            r = r * v + a
        return r

    # formatting ---------------------------------------------------------
    def fmt(self, var: str = "x") -> str:
        K = self.K
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if K is QQ:
                s = str(a)
                neg = a < 0
                if neg:
                    s = s[1:]
                if mono and s == "1":
                    body = mono
                else:
                    body = s + ("*" + mono if mono else "")
            else:
                neg = False
                s = K.fmt(a)
                body = (f"({s})*{mono}" if mono else f"({s})") if s != "1" else (mono or "1")
            terms.append(("-" if neg else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out

    def __repr__(self):
        return f"UniPoly({self.fmt()})"

    def __str__(self):
        return self.fmt()


def upoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; may raise SplitEvent."""
    if a.K is not b.K:
        K = common_node(a.K, b.K)
        a, b = a.coerce(K), b.coerce(K)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(a: UniPoly, b: UniPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    K = a.K
    r0, r1 = a, b
    s0, s1 = UniPoly(K, [K.one]), UniPoly(K, [])
    t0, t1 = UniPoly(K, []), UniPoly(K, [K.one])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = K.inv(r0.lc())
    return r0 * inv, s0 * inv, t0 * inv


def _half_xgcd(a: UniPoly, b: UniPoly):
    """(g, s) with s*a = g mod b, g monic; the inverse only needs s."""
    K = a.K
    r0, r1 = a, b
    s0, s1 = UniPoly(K, [K.one]), UniPoly(K, [])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    inv = K.inv(r0.lc())
    return r0 * inv, s0 * inv


def squarefree_decomposition(f: UniPoly):
    """Yun's algorithm.  Returns [(g_j, j)] with g_j monic squarefree,
    pairwise coprime, j strictly increasing, f = lc(f) * prod g_j^j."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if f.deg == 0:
        return []
    f = f.monic()
    df = f.derivative()
    a = upoly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.deg > 0:
        g = upoly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        if g.deg > 0:
            out.append((g, i))
        i += 1
    return out


def factor_over_Q(f: UniPoly):
    """Complete factorization over Q into monic irreducibles (via sympy).

    Returns [(p, e)] sorted by (degree, coefficients)."""
    import sympy

    if f.K is not QQ:
        raise TypeError("factor_over_Q needs a rational polynomial")
    if f.is_zero():
        raise ValueError("factorization of zero")
    if f.deg == 0:
        return []
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(int(a.numerator), int(a.denominator)) for a in reversed(f.c)]
    P = sympy.Poly(coeffs, x, domain=sympy.QQ)
    _, facs = P.factor_list()
    out = []
    for p, e in facs:
        cs = [mpq(int(r.p), int(r.q)) for r in reversed(p.all_coeffs())]
        out.append((UniPoly(QQ, cs).monic(), int(e)))
    out.sort(key=lambda pe: (pe[0].deg, [float(v) for v in pe[0].c], pe[1]))
    return out


# ---------------------------------------------------------------------------
# dense linear algebra over a node (rows are lists)


def rref(K, rows: Sequence[Sequence]):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncol = len(M[0])
    piv = []
    r = 0
    for col in range(ncol):
        p = None
        for i in range(r, len(M)):
            if not K.is_zero(M[i][col]):
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = K.inv(M[r][col])
        M[r] = [v * inv for v in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r:
                f = M[i][col]
                if f:
                    M[i] = [a - f * b for a, b in zip(M[i], pr)]
        piv.append(col)
        r += 1
        if r == len(M):
            break
    return M, piv


def rank(K, rows) -> int:
    return len(rref(K, rows)[1])


def nullspace(K, rows, ncol: int | None = None):
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    if ncol is None:
        ncol = len(rows[0]) if rows else 0
    if not rows:
        return [[K.one if i == j else K.zero for i in range(ncol)] for j in range(ncol)]
    R, piv = rref(K, rows)
    free = [j for j in range(ncol) if j not in piv]
    basis = []
    for fj in free:
        v = [K.zero] * ncol
        v[fj] = K.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i][fj]
        basis.append(v)
    return basis


def solve_left(K, target: Sequence, rows: Sequence[Sequence]):
    """Find coefficients a with sum_i a_i rows[i] = target, or None."""
    n = len(rows)
    m = len(target)
    # columns of the system are the rows; solve M^T a = target
    aug = [[rows[i][j] for i in range(n)] + [target[j]] for j in range(m)]
    R, piv = rref(K, aug)
    if n in piv:
        return None
    a = [K.zero] * n
    for i, pc in enumerate(piv):
        a[pc] = R[i][n]
    return a


def det(K, rows) -> object:
    """Determinant over a field node by Gaussian elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return K.one
    d = K.one
    for col in range(n):
        p = None
        for i in range(col, n):
            if not K.is_zero(M[i][col]):
                p = i
                break
        if p is None:
            return K.zero
        if p != col:
            M[col], M[p] = M[p], M[col]
            d = -d
        pv = M[col][col]
        d = d * pv
        inv = K.inv(pv)
        for i in range(col + 1, n):
            f = M[i][col]
            if f:
                f = f * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return d


def bareiss_det(rows, is_zero: Callable, exact_div: Callable, one, zero):
    """Fraction-free determinant over an integral domain.

    ``exact_div(a, b)`` must return a/b when b divides a exactly."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(M[k][k]):
            sw = None
            for i in range(k + 1, n):
                if not is_zero(M[i][k]):
                    sw = i
                    break
            if sw is None:
                return zero
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * pk - M[i][k] * M[k][j], prev)
            M[i][k] = zero
        prev = pk
    r = M[n - 1][n - 1]
    return r if sign == 1 else -r


def int_det(rows) -> int:
    """Exact determinant of an integer (or rational) matrix via Bareiss."""
    from math import lcm

    rows = [list(r) for r in rows]
    scale = mpq(1)
    irows = []
    for r in rows:
        den = 1
        for v in r:
            v = to_rational(v)
            den = lcm(den, int(v.denominator))
        scale *= den
        irows.append([gmpy2.mpz(to_rational(v) * den) for v in r])
    d = bareiss_det(irows, lambda a: a == 0, lambda a, b: a // b, gmpy2.mpz(1), gmpy2.mpz(0))
    return mpq(d) / scale


def identity(K, n: int):
    return [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(r) for r in zip(*M)]


def mat_mul(A, B):
    """Product of two scalar matrices (lists of rows)."""
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_inv(K, M):
    """Inverse of a square matrix over a node; raises on singular input."""
    n = len(M)
    aug = [[K.coerce(v) for v in M[i]] + identity(K, n)[i] for i in range(n)]
    R, piv = rref(K, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def split_first(parent, h: "UniPoly", fn: Callable, name: str = "t", irreducible: bool = False):
    """Like :func:`split_run` but stops after the first factor that
    completes; returns ``(K, root, result)``."""
    todo = [h]
    while todo:
        f = todo.pop(0)
        if f.deg == 1:
            K, r = parent, -f.c[0]
        else:
            K = ExtNode(parent, f, name, irreducible=irreducible and f is h)
            r = K.gen
        try:
            return K, r, fn(K, r)
        except SplitEvent as ev:
            if ev.node is K:
                todo = list(ev.factors) + todo
                continue
            raise
    raise InternalError("no factor completed")
