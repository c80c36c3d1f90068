import pytest
import sympy
from gmpy2 import mpq

from syzcurve.algebra import (
    QQ, ExtNode, SplitEvent, UniPoly, det, factor_over_Q, int_det, mat_inv, mat_mul, nullspace,
    rank, split_first, split_run, squarefree_decomposition, upoly_gcd, upoly_xgcd,
)

from helpers import up


def test_gcd_is_monic():
    a = up(-1, 0, 1) * up(2, 1)        # (x^2 - 1)(x + 2)
    b = up(-1, 1) * up(3, 1)           # (x - 1)(x + 3)
    assert upoly_gcd(a * mpq(5), b) == up(-1, 1)


def test_xgcd_bezout():
    a, b = up(1, 2, 3), up(1, 0, 0, 1)
    g, s, t = upoly_xgcd(a, b)
    assert s * a + t * b == g
    assert g.deg == 0 and g.lc() == 1


def test_yun_matches_sympy():
    f = up(-1, 1) ** 3 * up(1, 0, 1) ** 2 * up(5, 1)
    dec = squarefree_decomposition(f)
    assert [(g.deg, j) for g, j in dec] == [(1, 1), (2, 2), (1, 3)]
    x = sympy.Symbol("x")
    expr = sympy.Poly([int(c) for c in reversed(f.c)], x)
    assert sympy.sqf_list(expr)[1][-1][1] == 3


def test_factor_over_Q():
    f = up(-2, 0, 1) * up(1, 1) ** 2
    facs = factor_over_Q(f)
    assert [(p.deg, e) for p, e in facs] == [(1, 2), (2, 1)]


def test_extension_arithmetic_sqrt2():
    K = ExtNode(QQ, up(-2, 0, 1), "s", irreducible=True)
    s = K.gen
    assert s * s == K.coerce(2)
    inv = K.inv(s + 1)               # 1/(1 + s) = s - 1
    assert inv == s - 1
    assert (s + 3) / (s + 3) == K.one


def test_tower_arithmetic():
    K1 = ExtNode(QQ, up(-2, 0, 1), "s", irreducible=True)
    m = UniPoly(K1, [K1.coerce(-3), K1.zero, K1.one])
    K2 = ExtNode(K1, m, "r", irreducible=True)
    r = K2.gen
    s = K2.coerce(K1.gen)
    assert (r * s) ** 2 == K2.coerce(6)
    assert K2.inv(r * s) * (r * s) == K2.one


def test_zero_divisor_raises_split():
    K = ExtNode(QQ, up(-1, 0, 1), "t")   # t^2 - 1 reducible
    with pytest.raises(SplitEvent) as ev:
        K.inv(K.gen - 1)
    degs = sorted(f.deg for f in ev.value.factors)
    assert degs == [1, 1]


def test_split_run_covers_all_roots():
    h = up(-1, 0, 1) * up(-2, 0, 1)      # roots +-1, +-sqrt 2

    def fn(K, r):
        # the zero test of r^2 - 1 separates the two quadratic factors
        return K.is_zero(r * r - 1)

    out = split_run(QQ, h, fn)
    assert sum(f.deg for f, *_ in out) == 4
    assert sorted((f.deg, res) for f, _, _, res in out) == [(2, False), (2, True)]
    for f, K, r, res in out:
        assert K.is_zero(f(r))


def test_split_first_returns_one_branch():
    h = up(-1, 0, 1)
    K, r, res = split_first(QQ, h, lambda K, r: K.is_zero(r - 1))
    assert K is QQ and res == (r == 1)


def test_linear_algebra():
    M = [[mpq(2), mpq(1)], [mpq(1), mpq(3)]]
    assert det(QQ, M) == 5
    I = mat_mul(M, mat_inv(QQ, M))
    assert I == [[1, 0], [0, 1]]
    assert rank(QQ, [[1, 2, 3], [2, 4, 6]]) == 1
    N = nullspace(QQ, [[mpq(1), mpq(2), mpq(3)]], 3)
    assert len(N) == 2
    assert int_det([[1, 2], [3, 4]]) == -2
