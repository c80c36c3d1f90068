"""Concrete quartic normal forms, one per singularity configuration.

Each family fixes the shape of the Hilbert-Burch matrix and the
factorization type of a few entries.  The remaining entries are taken
from a small pool, first choice that gives height-two minors, at least
three independent entries and a birational map.  Nothing here looks at
the singularities of the result; that is left to the classifier.
"""

from __future__ import annotations

from itertools import product

from .algebra import QQ, rank
from .binforms import BinForm
from .syzygy import HBMatrix, ParamTriple, base_point_free, birationality

__all__ = ["QUARTIC_FAMILIES", "quartic_fixture", "valid_quartic_hb", "random_triple",
           "is_true_triple", "random_true_triple"]


def _lin(a, b):
    return BinForm(QQ, 1, [b, a])  # a*x + b*y


L = [_lin(1, 0), _lin(0, 1), _lin(1, 1), _lin(1, -1), _lin(1, 2), _lin(2, 1), _lin(1, -2)]


def _pool(deg):
    """Small forms of the given degree, sparse ones first."""
    out = []
    for cs in product([0, 1, -1, 2], repeat=deg + 1):
        if any(cs):
            out.append(BinForm(QQ, deg, list(cs)))
    out.sort(key=lambda f: (sum(1 for v in f.c if v), sum(abs(int(v)) for v in f.c)))
    return out


_Q = _pool(2)
_C = _pool(3)


def valid_quartic_hb(phi: HBMatrix) -> bool:
    if phi.degs == (2, 2):
        ents = [list(phi[i, j].c) for i in range(3) for j in range(2)]
        if rank(QQ, ents) < 3:
            return False
    g = ParamTriple(tuple(phi.phi()))
    if rank(QQ, [list(f.c) for f in g.g]) < 3 or not base_point_free(g):
        return False
    return birationality(g, phi)[0] == 1


def _shapes(kinds):
    """Forms of the requested factorization types ("node": two distinct
    linear factors, "cusp": a square, "triple", "tac", "cube" for cubics)
    built from pairwise distinct linear forms, in a fixed order."""
    need = {"node": 2, "cusp": 1, "triple": 3, "tac": 2, "cube": 1}
    n = sum(need[k] for k in kinds)
    from itertools import permutations
    for idx in permutations(range(len(L)), n):
        out, i = [], 0
        for k in kinds:
            ls = [L[j] for j in idx[i:i + need[k]]]
            i += need[k]
            if k == "node":
                out.append(ls[0] * ls[1])
            elif k == "cusp":
                out.append(ls[0] * ls[0])
            elif k == "triple":
                out.append(ls[0] * ls[1] * ls[2])
            elif k == "tac":
                out.append(ls[0] * ls[0] * ls[1])
            else:
                out.append(ls[0] ** 3)
        yield out


def _first(kinds, build):
    for forms in _shapes(kinds):
        for phi in build(*forms):
            if valid_quartic_hb(phi):
                return phi
    raise ValueError("no matrix of this shape meets the side conditions")


def _fam1(Q1, Q2, Q3):
    z = BinForm.zero(QQ, 2)
    yield HBMatrix([[Q1, Q1], [Q2, z], [z, Q3]])


def _fam2(Q1, Q2):
    z = BinForm.zero(QQ, 2)
    for Q3 in _Q:
        yield HBMatrix([[Q1, z], [Q2, Q3], [z, Q2]])


def _fam3(Q3):
    z = BinForm.zero(QQ, 2)
    for Q1 in _Q[:40]:
        for Q2 in _Q[:40]:
            yield HBMatrix([[Q1, Q2], [Q3, Q1], [z, Q3]])


def _fam4(C3):
    z = BinForm.zero(QQ, 1)
    for C1 in _C[:40]:
        for C2 in _C[:40]:
            yield HBMatrix([[L[0], C1], [L[1], C2], [z, C3]])


QUARTIC_FAMILIES = {
    "(2:1,1)^3": (("node", "node", "node"), _fam1),
    "(2:1,1)^2,(2:1)": (("node", "node", "cusp"), _fam1),
    "(2:1,1),(2:1)^2": (("node", "cusp", "cusp"), _fam1),
    "(2:1)^3": (("cusp", "cusp", "cusp"), _fam1),
    "(2:2:1,1),(2:1,1)": (("node", "node"), _fam2),
    "(2:2:1,1),(2:1)": (("cusp", "node"), _fam2),
    "(2:2:1),(2:1,1)": (("node", "cusp"), _fam2),
    "(2:2:1),(2:1)": (("cusp", "cusp"), _fam2),
    "(2:2:2:1,1)": (("node",), _fam3),
    "(2:2:2:1)": (("cusp",), _fam3),
    "(3:1,1,1)": (("triple",), _fam4),
    "(3:1,1)": (("tac",), _fam4),
    "(3:1)": (("cube",), _fam4),
}


def quartic_fixture(label: str) -> HBMatrix:
    try:
        make = QUARTIC_FAMILIES[label]
    except KeyError:
        raise ValueError(f"unknown quartic configuration {label!r}") from None
    return _first(*make)


def random_triple(rng, d: int, lo: int = -9, hi: int = 9) -> ParamTriple:
    return ParamTriple.of(*[BinForm(QQ, d, [rng.randint(lo, hi) for _ in range(d + 1)]) for _ in range(3)])


def is_true_triple(g: ParamTriple) -> bool:
    """Base-point-free, linearly independent and birational."""
    if rank(QQ, [list(f.c) for f in g.g]) < 3 or not base_point_free(g):
        return False
    return birationality(g)[0] == 1


def random_true_triple(rng, d: int, lo: int = -9, hi: int = 9, max_tries: int = 1000) -> ParamTriple:
    for _ in range(max_tries):
        g = random_triple(rng, d, lo, hi)
        if is_true_triple(g):
            return g
    raise ValueError("no true triple found")
