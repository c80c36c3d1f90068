import random

import pytest

from syzcurve.algebra import QQ
from syzcurve.fixtures import quartic_fixture, random_true_triple
from syzcurve.mpoly import MPoly
from syzcurve.oracle import cross_validate, implicitize, multiplicity_at, singular_points_d4
from syzcurve.syzygy import ParamTriple

from helpers import triple


def test_implicit_examples():
    assert str(implicitize(triple("x^4", "x^3*y", "y^4"))) == "T1^3*T3 - T2^4"
    c = implicitize(triple("x^2", "x*y", "y^2"))
    assert c.degree == 2 and str(c) == "T1*T3 - T2^2"
    c = implicitize(triple("x^4", "x^2*y^2", "y^4"))
    assert (c.degree, c.r, str(c)) == (2, 2, "T1*T3 - T2^2")


def test_multiplicity_examples():
    C = implicitize(triple("x^4", "x^3*y", "y^4"))
    assert multiplicity_at(C, (QQ.zero, QQ.zero, QQ.one)) == 3
    conic = implicitize(triple("x^2", "x*y", "y^2"))
    assert multiplicity_at(conic, (QQ.one, QQ.zero, QQ.zero)) == 1
    assert multiplicity_at(conic, (QQ.one, QQ.one, QQ.coerce(5))) == 0
    with pytest.raises(ValueError):
        multiplicity_at(type(C)(MPoly(QQ, 3), 0), (QQ.one, QQ.zero, QQ.zero))


def test_singular_count_examples():
    assert singular_points_d4(implicitize(triple("x^4", "x^3*y", "y^4"))) == 1
    g = ParamTriple(tuple(quartic_fixture("(2:1,1)^3").phi()))
    assert singular_points_d4(implicitize(g)) == 3


def test_non_birational_path():
    rep = cross_validate(triple("x^4", "x^2*y^2", "y^4"))
    assert rep.ok and set(rep.checks) == {"vanishes", "degree"}


def test_cross_validate_random():
    rng = random.Random(4)
    for d in (4, 4, 5, 6):
        rep = cross_validate(random_true_triple(rng, d))
        assert rep.ok, rep.diffs
