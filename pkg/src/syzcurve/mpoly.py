"""Small sparse multivariate polynomials over a coefficient node.

Only what the symbolic identity checks, the implicit equation, and the
oracle need: ring operations, exact division by Bareiss pivots,
substitution of binary forms, and evaluation.  Exponents are tuples.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .algebra import QQ

Exp = Tuple[int, ...]


class MPoly:
    __slots__ = ("K", "n", "t")

    def __init__(self, K, n: int, terms: Dict[Exp, object] | None = None):
        self.K = K
        self.n = n
        self.t = {}
        if terms:
            for e, c in terms.items():
                c = K.coerce(c)
                if c:
                    self.t[tuple(e)] = c

    @classmethod
    def _raw(cls, K, n, t):
        p = cls.__new__(cls)
        p.K, p.n, p.t = K, n, t
        return p

    @classmethod
    def var(cls, K, n: int, i: int) -> "MPoly":
        e = [0] * n
        e[i] = 1
        return cls._raw(K, n, {tuple(e): K.one})

    @classmethod
    def const(cls, K, n: int, c) -> "MPoly":
        c = K.coerce(c)
        return cls._raw(K, n, {(0,) * n: c} if c else {})

    def is_zero(self) -> bool:
        return not self.t

    def degree(self) -> int:
        return max((sum(e) for e in self.t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.t}) <= 1

    def __add__(self, o):
        if not isinstance(o, MPoly):
            o = MPoly.const(self.K, self.n, o)
        t = dict(self.t)
        for e, c in o.t.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MPoly._raw(self.K, self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.K, self.n, {e: -c for e, c in self.t.items()})

    def __sub__(self, o):
        if not isinstance(o, MPoly):
            o = MPoly.const(self.K, self.n, o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, MPoly):
            c = self.K.coerce(o)
            if not c:
                return MPoly._raw(self.K, self.n, {})
            return MPoly._raw(self.K, self.n, {e: v * c for e, v in self.t.items()})
        if len(self.t) > len(o.t):
            a, b = o.t, self.t
        else:
            a, b = self.t, o.t
        t: dict = {}
        get = t.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw(self.K, self.n, {e: v for e, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = MPoly.const(self.K, self.n, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, MPoly):
            o = MPoly.const(self.K, self.n, o)
        return (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset((e, str(c)) for e, c in self.t.items()))

    def leading(self):
        e = max(self.t)
        return e, self.t[e]

    def exact_div(self, d: "MPoly") -> "MPoly":
        """Quotient by lex-leading-term division; raises if inexact."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if len(d.t) == 1:
            (ed, cd), = d.t.items()
            inv = self.K.inv(cd)
            out = {}
            for e, c in self.t.items():
                q = tuple(x - y for x, y in zip(e, ed))
                if min(q) < 0:
                    raise ArithmeticError("inexact multivariate division")
                out[q] = c * inv
            return MPoly._raw(self.K, self.n, out)
        ed, cd = d.leading()
        inv = self.K.inv(cd)
        r = MPoly._raw(self.K, self.n, dict(self.t))
        q: dict = {}
        while r.t:
            er, cr = r.leading()
            m = tuple(x - y for x, y in zip(er, ed))
            if min(m) < 0:
                raise ArithmeticError("inexact multivariate division")
            c = cr * inv
            q[m] = c
            r = r - MPoly._raw(self.K, self.n, {tuple(a + b for a, b in zip(e, m)): v * c for e, v in d.t.items()})
        return MPoly._raw(self.K, self.n, q)

    def eval(self, vals) -> object:
        r = 0
        for e, c in self.t.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v = v * x ** k
            r = r + v
        return r

    def subs_forms(self, forms, deg: int = 0):
        """Substitute one binary form per variable (all of equal degree);
        ``deg`` is the degree reported for a zero result."""
        from .binforms import BinForm

        K = forms[0].K
        cache = {}
        out = None
        for e, c in self.t.items():
            term = BinForm.const(K, K.coerce(c))
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = forms[i] ** k
                    term = term * cache[key]
            out = term if out is None else out + term
        if out is None:
            return BinForm.zero(K, deg)
        return out

    def partial(self, i: int) -> "MPoly":
        t = {}
        for e, c in self.t.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return MPoly._raw(self.K, self.n, t)

    def linear_subs(self, M):
        """p(M v): variable i becomes sum_j M[i][j] v_j."""
        K = M[0][0].node if hasattr(M[0][0], "node") else self.K
        n = self.n
        lin = [MPoly._raw(K, n, {tuple(1 if k == j else 0 for k in range(n)): K.coerce(M[i][j])
                                  for j in range(n) if K.coerce(M[i][j])}) for i in range(n)]
        out = MPoly._raw(K, n, {})
        pw = {}
        for e, c in self.t.items():
            term = MPoly.const(K, n, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in pw:
                        pw[(i, k)] = lin[i] ** k
                    term = term * pw[(i, k)]
            out = out + term
        return out

    def fmt(self, names: Iterable[str]) -> str:
        names = list(names)
        parts = []
        for e in sorted(self.t, reverse=True):
            c = self.t[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            s = str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            body = mono if (s == "1" and mono) else (s + ("*" + mono if mono else ""))
            parts.append((neg, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"MPoly({self.fmt([f'v{i}' for i in range(self.n)])})"


class LaplaceMinors:
    """Maximal minors of a wide matrix by memoized row expansion.

    ``minor(cols)`` is the determinant of the first ``len(cols)`` rows on
    the given (increasing) columns.  The memo is shared between calls, so
    asking for every maximal minor costs one sweep over column subsets.
    No division is used, which suits sparse matrices of monomials.
    """

    def __init__(self, M, zero, one):
        self.M = M
        self.zero = zero
        self.memo = {(): one}

    def minor(self, cols) -> object:
        cols = tuple(cols)
        memo = self.memo
        if cols in memo:
            return memo[cols]
        k = len(cols) - 1
        acc = self.zero
        row = self.M[k]
        for idx, j in enumerate(cols):
            a = row[j]
            if _is_zero(a):
                continue
            s = self.minor(cols[:idx] + cols[idx + 1:])
            if _is_zero(s):
                continue
            term = a * s
            acc = acc + term if (k - idx) % 2 == 0 else acc - term
        memo[cols] = acc
        return acc


def _is_zero(a) -> bool:
    z = getattr(a, "is_zero", None)
    return z() if callable(z) else not a


def mpoly_det_laplace(M):
    """Determinant of a square MPoly matrix by memoized expansion."""
    K = nv = None
    for row in M:
        for v in row:
            if isinstance(v, MPoly):
                K, nv = v.K, v.n
                break
        if K is not None:
            break
    return LaplaceMinors(M, MPoly._raw(K, nv, {}), MPoly.const(K, nv, 1)).minor(range(len(M)))


def mpoly_det_bareiss(M):
    """Fraction-free determinant of a square matrix of MPoly entries."""
    from .algebra import bareiss_det

    K, nv = M[0][0].K, M[0][0].n
    return bareiss_det(M, lambda a: a.is_zero(), lambda a, b: a.exact_div(b),
                       MPoly.const(K, nv, 1), MPoly._raw(K, nv, {}))
