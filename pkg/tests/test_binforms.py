import pytest
from gmpy2 import mpq

from syzcurve.algebra import QQ, ExtNode
from syzcurve.binforms import BinForm, bf_factor_Q, bf_gcd, bf_gcd_many, bf_resultant, bf_squarefree, proj_eq

from helpers import bf, form, up


def test_gcd_examples():
    assert bf_gcd(bf("x^2 - y^2"), bf("x^2 + 2*x*y + y^2")) == bf("x + y")
    assert bf_gcd(bf("x^3"), bf("x^2*y")) == bf("x^2")
    f = bf("3*x^2 + 6*x*y")
    assert bf_gcd(BinForm.zero(QQ, 2), f) == f.normalize()


def test_gcd_keeps_root_at_infinity():
    g = bf_gcd(bf("x*y^3"), bf("y^2*x^2 + y^4"))
    assert g == bf("y^2")
    assert g.mult_at_infinity() == 2


def test_gcd_many():
    assert bf_gcd_many([bf("x^3"), bf("x^2*y"), bf("x*y^2")]) == bf("x")


def test_squarefree_examples():
    dec = bf_squarefree(bf("x^3*y^3 + x^2*y^4"))       # x^2 y^3 (x + y)
    assert [(g, j) for g, j in dec] == [(bf("x + y"), 1), (bf("x"), 2), (bf("y"), 3)]
    assert bf_squarefree(bf("x^4 + 2*x^2*y^2 + y^4")) == [(bf("x^2 + y^2"), 2)]
    dec = bf_squarefree(bf("x^4*y^2 - 2*x^3*y^3 + x^2*y^4"))
    assert len(dec) == 1 and dec[0][1] == 2
    assert dec[0][0].is_unit_multiple(bf("x^2*y - x*y^2"))


def test_resultant_examples():
    a, b, c, d = map(mpq, (2, 3, 5, 7))
    assert bf_resultant(BinForm(QQ, 1, [b, a]), BinForm(QQ, 1, [d, c])) == a * d - b * c
    assert bf_resultant(bf("x"), bf("y")) in (1, -1)
    assert bf_resultant(bf("x^2 - y^2"), bf("x - y")) == 0


def test_factor_examples():
    assert bf_factor_Q(bf("x^4 - y^4")) == [(bf("x - y"), 1), (bf("x + y"), 1), (bf("x^2 + y^2"), 1)]
    assert bf_factor_Q(bf("x^6")) == [(bf("x"), 6)]
    assert bf_factor_Q(bf("x^4*y - 4*x^2*y^3 + 4*y^5")) == [(bf("y"), 1), (bf("x^2 - 2*y^2"), 2)]


def test_derivatives_euler():
    f = bf("3*x^3 - x*y^2 + 5*y^3")
    x, y = bf("x"), bf("y")
    assert x * f.dx() + y * f.dy() == f * 3


def test_substitute_and_eval():
    f = bf("x^2 - 2*y^2")
    g = f.substitute(1, 1, 0, 1)   # f(x + y, y)
    assert g == bf("x^2 + 2*x*y - y^2")
    assert f(mpq(2), mpq(1)) == 2


def test_forms_over_extension():
    K = ExtNode(QQ, up(-2, 0, 1), "s", irreducible=True)
    s = K.gen
    lin = BinForm(K, 1, [-s, K.one])               # x - s y
    f = bf("x^2 - 2*y^2").coerce(K)
    assert bf_gcd(f, lin * lin) == lin.normalize()
    assert proj_eq(K, (s, K.one), (K.coerce(2), s))


def test_errors():
    with pytest.raises(ValueError):
        bf_squarefree(BinForm.zero(QQ, 3))
    with pytest.raises(ValueError):
        form()
