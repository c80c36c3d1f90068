import pytest

from syzcurve.algebra import QQ
from syzcurve.biproj import cp_configuration, ecp_fixture
from syzcurve.blowup import (
    InfNear, TripleLemmaInapplicable, blowup_matrices, first_neighborhood, multiplicity_tree,
    normalize_at_point, sequence_string,
)
from syzcurve.fixtures import QUARTIC_FAMILIES, quartic_fixture
from syzcurve.singloc import analyze_singularities
from syzcurve.syzygy import HBMatrix, ParamTriple, hb_kernel

from helpers import bf, triple

P001 = (QQ.zero, QQ.zero, QQ.one)


def test_normalize_e6():
    phi = hb_kernel(triple("x^4", "x^3*y", "y^4"))
    n = normalize_at_point(phi, P001)
    assert n.dj == 3
    assert n.matrix[2, 0].is_zero()
    assert n.Q3.deg == 3


def test_normalize_canonical_is_identity():
    phi = ecp_fixture("c:c:c", 2)
    n = normalize_at_point(phi, P001)
    assert [[f for f in r] for r in n.matrix.e] == [[f for f in r] for r in phi.e]


def test_inapplicable():
    phi = quartic_fixture("(2:1,1)^3")
    pt = next(iter(r.point for r in analyze_singularities(ParamTriple(tuple(phi.phi())), tree=False)))
    # m = 2 = d1 = d2 applies; a point off the curve (m = 0) does not
    normalize_at_point(phi, pt)
    phi13 = hb_kernel(triple("x^4", "x^3*y", "y^4"))
    with pytest.raises(TripleLemmaInapplicable):
        normalize_at_point(phi13, (QQ.one, QQ.coerce(2), QQ.coerce(3)))


def test_chart_minors():
    phi = ecp_fixture("c:c:c", 2)
    n = normalize_at_point(phi, P001)
    C1, C2 = blowup_matrices(n)
    P1, P2, Q3, D = n.P1, n.P2, n.Q3, n.delta
    m1 = C1.phi()
    # equal up to one overall sign
    want = (P2 * P2 * Q3, -(P1 * D), P2 * D)
    assert all(a == b for a, b in zip(m1, want)) or all(a == -b for a, b in zip(m1, want))


def test_first_neighborhood_ccc():
    phi = ecp_fixture("c:c:c", 2)
    n = normalize_at_point(phi, P001)
    pts = first_neighborhood(n)
    assert [q.multiplicity for q in pts if q.multiplicity >= 2] == [2]
    t = multiplicity_tree(phi, P001, delta=3)
    assert t.count_at_least(2) == 2
    assert sequence_string(t) in ("2:2:2:1,1", "2:2:2:1")


def test_constant_Q3_has_no_neighborhood():
    from syzcurve.blowup import NormalizedHB
    one = bf("1")
    z = bf("x") * 0
    M = HBMatrix([[bf("x"), one], [bf("y"), one * 0], [z, one]], (1, 0))
    n = NormalizedHB(M, None, None, 2, 0)
    assert first_neighborhood(n) == []


def test_sequence_notation():
    t = InfNear(2, children=[InfNear(2, children=[InfNear(1), InfNear(1)])])
    assert sequence_string(t) == "2:2:1,1"
    t = InfNear(3, children=[InfNear(2, children=[InfNear(1)]), InfNear(1)])
    assert sequence_string(t) == "3:(2:1),1"
    assert sequence_string(InfNear(2, resolved=False)) is None
    assert t.weight() == 3 + 1


@pytest.mark.parametrize("label", list(QUARTIC_FAMILIES))
def test_param_method_agrees(label):
    phi = quartic_fixture(label)
    g = ParamTriple(tuple(phi.phi()))
    for r in analyze_singularities(g, phi, tree=False):
        a = multiplicity_tree(phi, r.point, delta=r.delta, method="param")
        b = multiplicity_tree(phi, r.point, delta=r.delta, method="auto")
        assert sequence_string(a) == sequence_string(b)
        assert a.weight() == r.delta


def _tba_counts(phi):
    from syzcurve.biproj import build_C_A, gcd_I3A, gcd_shape
    c = phi.degs[0]
    _, A = build_C_A(phi)
    want = sum(e - 1 for e in gcd_shape(gcd_I3A(A)))
    reps = analyze_singularities(ParamTriple(tuple(phi.phi())), phi)
    got = sum(r.conjugacy_count * r.infinitely_near.count_at_least(c) for r in reps if r.m == c)
    return want, got


def test_infinitely_near_count_matches_gcd_exponents():
    import random
    from syzcurve.biproj import ECP_LABELS
    from syzcurve.fixtures import random_true_triple
    from syzcurve.syzygy import is_balanced
    mats = [quartic_fixture(l) for l in QUARTIC_FAMILIES]
    mats = [m for m in mats if m.degs == (2, 2)]
    mats += [ecp_fixture(l, 3) for l in ECP_LABELS if l not in ("μ2", "(c,μ5)", "(∅,μ5)", "(∅,μ6)")]
    rng = random.Random(11)
    while len(mats) < 40:
        g = random_true_triple(rng, rng.choice([4, 4, 6]))
        if is_balanced(g)[0]:
            mats.append(hb_kernel(g))
    for phi in mats:
        want, got = _tba_counts(phi)
        assert want == got, phi
