"""Small constructors shared by the tests."""

from gmpy2 import mpq

from syzcurve.algebra import QQ, UniPoly
from syzcurve.binforms import BinForm
from syzcurve.cli import parse_form
from syzcurve.syzygy import ParamTriple


def up(*cs):
    """UniPoly over Q, coefficients lowest degree first."""
    return UniPoly(QQ, [mpq(c) for c in cs])


def bf(text):
    return parse_form(text)


def triple(a, b, c):
    return ParamTriple.of(bf(a), bf(b), bf(c))


def form(*cs):
    return BinForm(QQ, len(cs) - 1, [mpq(c) for c in cs])


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE = []
