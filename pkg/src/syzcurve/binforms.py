"""Homogeneous binary forms in x, y over a coefficient node.

Coefficient ``c[i]`` multiplies x^i y^(deg-i).  Multiplying two forms is
therefore plain convolution of coefficient lists, which is how every
operation here is implemented.  Roots are points of P^1; dehomogenizing at
y = 1 loses the root [1:0], whose multiplicity is tracked separately as
``deg - deg_x``.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import (
    QQ, UniPoly, det, factor_over_Q, squarefree_decomposition, upoly_gcd,
)

__all__ = [
    "BinForm", "bf_gcd", "bf_gcd_many", "bf_squarefree", "bf_resultant",
    "bf_factor_Q", "proj_normalize", "proj_eq", "X", "Y",
]


class BinForm:
    __slots__ = ("K", "deg", "c")

    def __init__(self, K, deg: int, coeffs: Sequence):
        if deg < 0:
            raise ValueError("form degree must be >= 0")
        if len(coeffs) != deg + 1:
            raise ValueError(f"degree {deg} form needs {deg + 1} coefficients, got {len(coeffs)}")
        self.K = K
        self.deg = deg
        self.c = tuple(K.coerce(a) for a in coeffs)

    @classmethod
    def _raw(cls, K, deg, cs):
        f = cls.__new__(cls)
        f.K = K
        f.deg = deg
        f.c = tuple(cs)
        return f

    @classmethod
    def zero(cls, K, deg: int) -> "BinForm":
        return cls._raw(K, deg, (K.zero,) * (deg + 1))

    @classmethod
    def const(cls, K, a) -> "BinForm":
        return cls._raw(K, 0, (K.coerce(a),))

    @classmethod
    def monomial(cls, K, a: int, b: int, coeff=1) -> "BinForm":
        cs = [K.zero] * (a + b + 1)
        cs[a] = K.coerce(coeff)
        return cls._raw(K, a + b, cs)

    @classmethod
    def from_dict(cls, K, deg: int, terms: dict) -> "BinForm":
        """``terms`` maps x-exponent -> coefficient."""
        cs = [K.zero] * (deg + 1)
        for i, v in terms.items():
            cs[i] = cs[i] + K.coerce(v)
        return cls._raw(K, deg, cs)

    @classmethod
    def homogenize(cls, p: UniPoly, deg: int) -> "BinForm":
        if p.deg > deg:
            raise ValueError("homogenization degree below polynomial degree")
        K = p.K
        return cls._raw(K, deg, list(p.c) + [K.zero] * (deg - max(p.deg, -1)))

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(self.K.is_zero(a) for a in self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i <= self.deg else self.K.zero

    def coerce(self, K) -> "BinForm":
        if K is self.K:
            return self
        return BinForm._raw(K, self.deg, [K.coerce(a) for a in self.c])

    def dehomogenize(self) -> UniPoly:
        """Polynomial in x obtained at y = 1."""
        return UniPoly(self.K, self.c)

    def mult_at_infinity(self) -> int:
        """Multiplicity of the root [1:0] (order of y dividing the form)."""
        if self.is_zero():
            raise ValueError("zero form")
        return self.deg - self.dehomogenize().deg

    def ord_x(self) -> int:
        """Multiplicity of the root [0:1]."""
        for i, a in enumerate(self.c):
            if not self.K.is_zero(a):
                return i
        raise ValueError("zero form")

    def __eq__(self, other):
        if not isinstance(other, BinForm):
            return NotImplemented
        if self.deg != other.deg:
            return False
        return all(self.K.is_zero(a - b) for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash((self.deg, tuple(str(a) for a in self.c)))

    def is_unit_multiple(self, other: "BinForm") -> bool:
        """True when self = u * other for a nonzero constant u."""
        if self.deg != other.deg:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalize() == other.normalize()

    # arithmetic -----------------------------------------------------------
    def _common(self, o: "BinForm"):
        if o.K is self.K:
            return self, o
        from .algebra import common_node
        K = common_node(self.K, o.K)
        return self.coerce(K), o.coerce(K)

    def __add__(self, o: "BinForm") -> "BinForm":
        a, b = self._common(o)
        if a.deg != b.deg:
            if b.is_zero():
                return a
            if a.is_zero():
                return b
            raise ValueError(f"adding forms of degrees {a.deg} and {b.deg}")
        return BinForm._raw(a.K, a.deg, [u + v for u, v in zip(a.c, b.c)])

    def __neg__(self):
        return BinForm._raw(self.K, self.deg, [-u for u in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, BinForm):
            node = getattr(o, "node", None)
            if node is not None and node.depth > self.K.depth:
                return self.coerce(node) * o
            s = self.K.coerce(o)
            return BinForm._raw(self.K, self.deg, [u * s for u in self.c])
        a, b = self._common(o)
        K = a.K
        cs = [K.zero] * (a.deg + b.deg + 1)
        for i, u in enumerate(a.c):
            if u:
                for j, v in enumerate(b.c):
                    if v:
                        cs[i + j] = cs[i + j] + u * v
        return BinForm._raw(K, a.deg + b.deg, cs)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BinForm":
        r = BinForm.const(self.K, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def exact_div(self, g: "BinForm") -> "BinForm":
        a, b = self._common(g)
        if b.deg > a.deg:
            if a.is_zero():
                raise ArithmeticError("zero form divided by a form of larger degree")
            raise ArithmeticError("inexact form division")
        if a.is_zero():
            return BinForm.zero(a.K, a.deg - b.deg)
        q, r = a.dehomogenize().divmod(b.dehomogenize())
        if not r.is_zero():
            raise ArithmeticError("inexact form division")
        n = a.deg - b.deg
        if q.deg > n:
            raise ArithmeticError("inexact form division")
        return BinForm.homogenize(q, n)

    def normalize(self) -> "BinForm":
        """Scale so the lowest-x-power nonzero coefficient is 1."""
        K = self.K
        for a in self.c:
            if not K.is_zero(a):
                inv = K.inv(a)
                return BinForm._raw(K, self.deg, [u * inv for u in self.c])
        return self

    def monic_x(self) -> "BinForm":
        """Scale so the highest-x-power nonzero coefficient is 1."""
        K = self.K
        for a in reversed(self.c):
            if not K.is_zero(a):
                inv = K.inv(a)
                return BinForm._raw(K, self.deg, [u * inv for u in self.c])
        return self

    def dx(self) -> "BinForm":
        if self.deg == 0:
            return BinForm.zero(self.K, 0)
        return BinForm._raw(self.K, self.deg - 1, [self.c[i] * i for i in range(1, self.deg + 1)])

    def dy(self) -> "BinForm":
        if self.deg == 0:
            return BinForm.zero(self.K, 0)
        d = self.deg
        return BinForm._raw(self.K, d - 1, [self.c[i] * (d - i) for i in range(d)])

    def __call__(self, a, b):
        """Value at (x, y) = (a, b)."""
        d = self.deg
        bp = [1] * (d + 1)
        for k in range(1, d + 1):
            bp[k] = bp[k - 1] * b
        r = 0
        for i in range(d, -1, -1):
            r = r * a + self.c[i] * bp[d - i]
        return r

    def substitute(self, a, b, c, d) -> "BinForm":
        """f(a*x + b*y, c*x + d*y)."""
        K = self.K
        lx = BinForm._raw(K, 1, [K.coerce(b), K.coerce(a)])
        ly = BinForm._raw(K, 1, [K.coerce(d), K.coerce(c)])
        n = self.deg
        px = [BinForm.const(K, 1)]
        py = [BinForm.const(K, 1)]
        for _ in range(n):
            px.append(px[-1] * lx)
            py.append(py[-1] * ly)
        out = BinForm.zero(K, n)
        for i, u in enumerate(self.c):
            if u:
                out = out + (px[i] * py[n - i]) * u
        return out

    # printing ---------------------------------------------------------------
    def to_str(self) -> str:
        K = self.K
        terms = []
        for i in range(self.deg, -1, -1):
            a = self.c[i]
            if not a:
                continue
            j = self.deg - i
            parts = []
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            mono = "*".join(parts)
            if K is QQ:
                neg = a < 0
                s = str(-a if neg else a)
                if not mono:
                    body = s
                elif s == "1":
                    body = mono
                else:
                    body = f"{s}*{mono}"
            else:
                neg = False
                s = K.fmt(a)
                if s == "1":
                    body = mono or "1"
                else:
                    body = f"({s})*{mono}" if mono else f"({s})"
            terms.append((neg, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_str

    def __repr__(self):
        return f"BinForm({self.to_str()})"


def _xy():
    return BinForm.monomial(QQ, 1, 0), BinForm.monomial(QQ, 0, 1)


X, Y = _xy()


def bf_gcd(f: BinForm, g: BinForm) -> BinForm:
    """Homogeneous gcd normalized so its lowest-x-power coefficient is 1."""
    f, g = f._common(g)
    fz, gz = f.is_zero(), g.is_zero()
    if fz and gz:
        raise ValueError("gcd of two zero forms")
    if fz:
        return g.normalize()
    if gz:
        return f.normalize()
    F, G = f.dehomogenize(), g.dehomogenize()
    ym = min(f.deg - F.deg, g.deg - G.deg)
    h = upoly_gcd(F, G)
    return BinForm.homogenize(h, h.deg + ym).normalize()


def bf_gcd_many(forms) -> BinForm:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of zero forms")
    g = forms[0].normalize()
    for f in forms[1:]:
        if g.deg == 0:
            break
        g = bf_gcd(g, f)
    return g


def bf_squarefree(f: BinForm):
    """[(g_j, j)]: squarefree, pairwise coprime, j increasing, with
    f = unit * prod g_j^j.  The root [1:0] enters through the factor y."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero form")
    K = f.K
    F = f.dehomogenize()
    k = f.deg - F.deg
    parts = {j: BinForm.homogenize(g, g.deg) for g, j in squarefree_decomposition(F)}
    if k:
        y = BinForm.monomial(K, 0, 1)
        parts[k] = parts[k] * y if k in parts else y
    return [(parts[j].normalize(), j) for j in sorted(parts)]


def bf_resultant(f: BinForm, g: BinForm):
    """Sylvester determinant of the homogeneous coefficient sequences."""
    f, g = f._common(g)
    K = f.K
    m, n = f.deg, g.deg
    N = m + n
    if N == 0:
        return K.one
    fs = list(reversed(f.c))
    gs = list(reversed(g.c))
    rows = []
    for i in range(n):
        rows.append([K.zero] * i + fs + [K.zero] * (N - m - 1 - i))
    for i in range(m):
        rows.append([K.zero] * i + gs + [K.zero] * (N - n - 1 - i))
    return det(K, rows)


def bf_factor_Q(f: BinForm):
    """Factorization over Q into irreducible forms, each monic in x; the
    root [1:0] appears as the factor y."""
    if f.K is not QQ:
        raise TypeError("bf_factor_Q needs rational coefficients")
    if f.is_zero():
        raise ValueError("factorization of the zero form")
    F = f.dehomogenize()
    out = []
    k = f.deg - F.deg
    if k:
        out.append((BinForm.monomial(QQ, 0, 1), k))
    for p, e in factor_over_Q(F):
        out.append((BinForm.homogenize(p, p.deg), e))
    return out


def proj_normalize(K, pt: Sequence):
    """Scale a projective point so its first nonzero coordinate is 1."""
    for a in pt:
        if not K.is_zero(a):
            inv = K.inv(a)
            return tuple(K.coerce(v) * inv for v in pt)
    raise ValueError("all coordinates of a projective point vanish")


def proj_eq(K, p: Sequence, q: Sequence) -> bool:
    """Equality in projective space (all 2x2 minors vanish)."""
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if not K.is_zero(p[i] * q[j] - p[j] * q[i]):
                return False
    return True
