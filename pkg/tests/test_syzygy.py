import random

import pytest

from syzcurve.algebra import QQ, nullspace
from syzcurve.binforms import bf_gcd_many
from syzcurve.fixtures import random_true_triple
from syzcurve.syzygy import (
    HBMatrix, base_point_free, birationality, build_convolution, hb_generic_balanced, hb_kernel,
    is_balanced, zz_residuals,
)

from helpers import bf, triple


def test_convolution_nullspaces():
    g = triple("x^2", "x*y", "y^2")
    A = build_convolution(g, 1)
    assert (len(A), len(A[0])) == (4, 6)
    assert len(nullspace(QQ, A, 6)) == 2
    g = triple("x^4", "x^3*y", "y^4")
    assert len(nullspace(QQ, build_convolution(g, 1), 6)) == 1


def test_balanced_examples():
    assert is_balanced(triple("x^4", "x^2*y^2", "y^4"))[0]
    assert not is_balanced(triple("x^4", "x^3*y", "y^4"))[0]
    ok, w = is_balanced(triple("x^2", "x*y", "y^2"))
    assert ok and abs(w) == 1
    with pytest.raises(ValueError):
        is_balanced(triple("x^3", "y^3", "x*y^2"))


def test_hb_kernel_examples():
    g = triple("x^4", "x^3*y", "y^4")
    phi = hb_kernel(g)
    assert phi.degs == (1, 3)
    assert tuple(phi.phi()) == g.g
    z1, z3 = bf("x") * 0, bf("x^3") * 0
    ref = HBMatrix([[bf("y"), z3], [bf("-x"), bf("y^3")], [z1, bf("-x^3")]], (1, 3))
    assert tuple(ref.phi()) == g.g
    assert hb_kernel(triple("x^2", "x*y", "y^2")).degs == (1, 1)


def test_hb_generic_matches_minors():
    for t in (("x^2", "x*y", "y^2"), ("x^4", "x^2*y^2", "y^4")):
        g = triple(*t)
        phi = hb_generic_balanced(g)
        assert tuple(phi.phi()) == g.g


def test_hb_generic_rejects_unbalanced():
    with pytest.raises(ValueError):
        hb_generic_balanced(triple("x^4", "x^3*y", "y^4"))


def test_base_points():
    assert base_point_free(triple("x^4", "x^3*y", "y^4"))
    assert not base_point_free(triple("x^4", "x^3*y", "x^2*y^2"))
    with pytest.raises(ValueError):
        hb_kernel(triple("x^4", "x^3*y", "x^2*y^2"))


def test_birationality_examples():
    assert birationality(triple("x^4", "x^2*y^2", "y^4")) == (2, 2)
    assert birationality(triple("x^4", "x^3*y", "y^4")) == (1, 4)
    assert birationality(triple("x^2", "x*y", "y^2")) == (1, 2)
    assert birationality(triple("x^6", "x^3*y^3 + y^6", "y^6")) == (3, 2)


def test_zz_symbolic_c1():
    ok, w = zz_residuals(1)
    assert ok == [True, True, True]


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_hb_roundtrip_random(d):
    rng = random.Random(d)
    for _ in range(10):
        g = random_true_triple(rng, d)
        phi = hb_kernel(g)
        assert sum(phi.degs) == d and phi.degs[0] <= phi.degs[1]
        assert tuple(phi.phi()) == g.g
        assert bf_gcd_many(list(phi.phi())).deg == 0
