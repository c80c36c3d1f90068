import random
from math import comb

import pytest

from syzcurve.algebra import InternalError
from syzcurve.conductor import build_Mg, build_Mprime, completion_matrix, conductor_gcd, delta_invariants
from syzcurve.fixtures import quartic_fixture, random_true_triple
from syzcurve.syzygy import ParamTriple, hb_kernel

from helpers import bf, triple


def test_Mg_shapes():
    g = triple("x^4", "x^3*y", "y^4")
    assert build_Mprime(hb_kernel(g)).shape == (5, 6)
    assert build_Mg(g).shape == (2, 6)
    g6 = random_true_triple(random.Random(1), 6)
    assert build_Mg(g6).shape == (4, 8)


def test_Mprime_identity():
    # [T1,T2,T3] phi N = rho M' : evaluate both sides at T = (1, 2, 3)
    from gmpy2 import mpq
    g = random_true_triple(random.Random(2), 4)
    phi = hb_kernel(g)
    Mp = build_Mprime(phi)
    T = [mpq(1), mpq(2), mpq(3)]
    d1, d2 = phi.degs
    lhs = []
    for j, other in ((0, d2), (1, d1)):
        col = sum((phi[i, j] * T[i] for i in range(3)), phi[0, j] * 0)
        for k in range(other + 1):
            lhs.append(col * bf(f"x^{k}*y^{other - k}" if k and other - k else
                               (f"x^{k}" if k else f"y^{other}" if other else "1")))
    for c in range(Mp.shape[1]):
        coeffs = [sum(a * t for a, t in zip(Mp.rows[r][c], T)) for r in range(Mp.shape[0])]
        assert list(lhs[c].c) == coeffs


def test_completion_rejects_dependent():
    with pytest.raises(ValueError):
        completion_matrix(triple("x^2", "2*x^2", "y^2"))


def test_examples():
    r = conductor_gcd(triple("x^4", "x^3*y", "y^4"))
    assert r.c_g == bf("x^6")
    assert [(str(f), e) for f, e in r.factors] == [("x", 6)]
    phi = quartic_fixture("(2:1,1)^3")
    r = conductor_gcd(ParamTriple(tuple(phi.phi())))
    assert sum(f.deg for f, e in r.factors) == 6 and all(e == 1 for _, e in r.factors)


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
def test_degree(d):
    rng = random.Random(100 + d)
    for _ in range(3):
        g = random_true_triple(rng, d)
        r = conductor_gcd(g)
        assert r.degree == (d - 1) * (d - 2)
        assert len(r.generators) == d - 1


def test_delta_invariants():
    r = conductor_gcd(triple("x^4", "x^3*y", "y^4"))
    assert delta_invariants(r, [[(0, 1)]]) == [3]
    with pytest.raises(InternalError):
        delta_invariants(r, [[]])
