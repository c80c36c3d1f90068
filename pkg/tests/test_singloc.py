import random
from math import comb

import pytest

from syzcurve.algebra import QQ
from syzcurve.binforms import bf_gcd, bf_squarefree
from syzcurve.conductor import conductor_gcd
from syzcurve.fixtures import QUARTIC_FAMILIES, quartic_fixture, random_true_triple
from syzcurve.singloc import (
    QUARTIC_CG_SHAPES, QUARTIC_LABELS, QUARTIC_SINGULARITIES, analyze_singularities, cg_shape,
    configuration_label, genus_check, jacobian_gcd, mult_c_report, quartic_classify,
)
from syzcurve.syzygy import ParamTriple, hb_kernel

from helpers import bf, triple


def _fix(label):
    return ParamTriple(tuple(quartic_fixture(label).phi()))


def test_jacobian_e6():
    g = triple("x^4", "x^3*y", "y^4")
    assert jacobian_gcd(g) == bf("x^2")


def test_e6_report():
    g = triple("x^4", "x^3*y", "y^4")
    (r,) = analyze_singularities(g)
    assert tuple(r.point) == (0, 0, 1)
    assert (r.m, r.s, r.branch_multiplicities, r.delta) == (3, 1, [3], 3)
    assert r.multiplicity_sequence == "3:1"
    assert quartic_classify(g).label == "(3:1)"
    assert genus_check(g, [r])


def test_oscnode_fixture():
    g = _fix("(2:2:2:1,1)")
    cond = conductor_gcd(g)
    (r,) = analyze_singularities(g, cond=cond)
    assert (r.m, r.s, r.delta) == (2, 2, 3)
    assert cg_shape(cond) == (3, 3)
    assert r.multiplicity_sequence == "2:2:2:1,1"


@pytest.mark.parametrize("label", list(QUARTIC_FAMILIES))
def test_fixture_classification(label):
    g = _fix(label)
    cond = conductor_gcd(g)
    reps = analyze_singularities(g, cond=cond)
    q = quartic_classify(g, reps, cond)
    assert q.label == label
    assert cg_shape(cond) == QUARTIC_CG_SHAPES[label]
    assert genus_check(g, reps)
    assert jacobian_gcd(g).deg == sum(r.conjugacy_count * (r.m - r.s) for r in reps)
    for r in reps:
        assert f"({r.multiplicity_sequence})" == QUARTIC_SINGULARITIES[(r.m, r.delta, r.s)][2]


def test_qcp_bqp_tags():
    assert quartic_classify(_fix("(2:2:1),(2:1,1)")).qcp == "(2:2:1,1),(2:1)"
    assert quartic_classify(_fix("(3:1,1)")).bqp is None
    assert quartic_classify(_fix("(2:1)^3")).bqp == "(2:1)^3"


def test_configuration_label():
    assert configuration_label([(2, 1, 2)] * 3) == "(2:1,1)^3"
    assert configuration_label([(2, 1, 1), (2, 2, 2)]) == "(2:2:1,1),(2:1)"
    assert len(QUARTIC_LABELS) == 13


def test_smooth_parameter_fiber():
    g = triple("x^4", "x^3*y", "y^4")
    phi = hb_kernel(g)
    p = g.at(QQ.coerce(2), QQ.coerce(1))
    a, b = phi.row_times(p)
    assert bf_gcd(a, b).deg == 1


def test_multc_report():
    assert mult_c_report(triple("x^4", "x^3*y", "y^4")) == "n/a"
    assert mult_c_report(triple("x^3", "x*y^2", "y^3 + x^2*y")) == "n/a"
    assert mult_c_report(_fix("(2:2:2:1)")) == "c:c:c"


@pytest.mark.parametrize("d", [4, 5, 6])
def test_random_invariants(d):
    rng = random.Random(7 * d)
    for _ in range(4 if d < 6 else 2):
        g = random_true_triple(rng, d)
        phi = hb_kernel(g)
        cond = conductor_gcd(g, phi)
        reps = analyze_singularities(g, phi, cond)
        assert genus_check(g, reps)
        d1, d2 = phi.degs
        for r in reps:
            assert r.m <= d2 and (r.m == d2 or r.m <= d1)
            assert r.infinitely_near.weight() == r.delta
        # fibers partition the roots of c_g
        sq = sum(f.deg for f, _ in cond.factors)
        assert sum(r.conjugacy_count * len(r.t_exponents) for r in reps) == sq
        J = jacobian_gcd(g)
        assert J.deg == sum(r.conjugacy_count * (r.m - r.s) for r in reps)
        for h, _ in bf_squarefree(J) if J.deg else []:
            assert bf_gcd(h, cond.c_g).deg == h.deg
