"""Singular points of a parameterized plane curve, fiber by fiber.

The roots of the conductor form c_g are exactly the parameters lying over
singular points.  Each Q-irreducible factor of c_g is handled once: adjoin
a root q, map it to p = Psi(q), and read the multiplicity and branches of
p from gcd(p * phi).  That gcd also tells which roots of the other
factors land on p, and those factors are retired from the worklist.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Tuple

from .algebra import QQ, ExtNode, InternalError
from .binforms import BinForm, bf_gcd, bf_gcd_many, bf_squarefree, proj_normalize
from .blowup import InfNear, multiplicity_tree, sequence_string
from .conductor import ConductorResult, conductor_gcd
from .syzygy import HBMatrix, ParamTriple, hb_kernel

__all__ = [
    "SingularPointReport", "jacobian_gcd", "analyze_singularities",
    "QUARTIC_SINGULARITIES", "QUARTIC_LABELS", "QUARTIC_CG_SHAPES",
    "QuarticType", "quartic_classify", "genus_check", "mult_c_report",
    "configuration_label", "cg_shape",
]


@dataclass
class SingularPointReport:
    factor: BinForm
    node: object
    point: Tuple
    m: int
    s: int
    branch_multiplicities: List[int]
    delta: int
    t_exponents: List[int]
    conjugacy_count: int
    parameter: Tuple = ()
    fiber: List[Tuple[int, int]] = field(default_factory=list)
    infinitely_near: Optional[InfNear] = None

    @property
    def multiplicity_sequence(self) -> Optional[str]:
        return sequence_string(self.infinitely_near) if self.infinitely_near else None

    def point_strings(self):
        K = self.node
        return [K.fmt(v) for v in self.point]


def jacobian_gcd(g: ParamTriple) -> BinForm:
    """gcd of the 2x2 minors of the matrix of partial derivatives."""
    dx = [f.dx() for f in g.g]
    dy = [f.dy() for f in g.g]
    minors = [dx[i] * dy[j] - dx[j] * dy[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    return bf_gcd_many(minors)


def _root(f: BinForm):
    """A root of the Q-irreducible x-monic form f, with its node."""
    if f.deg == 1:
        if f[1] == 0:
            return QQ, (QQ.one, QQ.zero)
        return QQ, (-f[0], QQ.one)
    K = ExtNode(QQ, f.dehomogenize().monic(), "t", irreducible=True)
    return K, (K.gen, K.one)


def analyze_singularities(g: ParamTriple, phi: HBMatrix | None = None,
                          cond: ConductorResult | None = None,
                          tree: bool = True) -> List[SingularPointReport]:
    if phi is None:
        phi = hb_kernel(g)
    if cond is None:
        cond = conductor_gcd(g, phi)
    d1, d2 = phi.degs
    facs = list(cond.factors)
    retired = [False] * len(facs)
    reports = []
    for i, (f, _) in enumerate(facs):
        if retired[i]:
            continue
        K, q = _root(f)
        p = proj_normalize(K, g.at(*q))
        a, b = phi.coerce(K).row_times(p)
        D = bf_gcd(a, b)
        m = D.deg
        sq = bf_squarefree(D)
        branches = sorted((j for h, j in sq for _ in range(h.deg)), reverse=True)
        S = None
        for h, _ in sq:
            S = h if S is None else S * h
        fiber = []
        for k, (fk, _) in enumerate(facs):
            if retired[k]:
                continue
            n = bf_gcd(S, fk.coerce(K)).deg
            if n:
                fiber.append((k, n))
        if sum(n for _, n in fiber) != S.deg:
            raise InternalError("fiber roots do not match the branches of gcd(p * phi)")
        ki = dict(fiber).get(i, 0)
        if not ki or f.deg % ki:
            raise InternalError("parameter not in its own fiber")
        for k, _ in fiber:
            retired[k] = True
        ts = sorted((facs[k][1] for k, n in fiber for _ in range(n)), reverse=True)
        if sum(ts) % 2:
            raise InternalError("odd exponent sum over a fiber")
        delta = sum(ts) // 2
        if m < 2:
            raise InternalError("conductor root over a smooth point")
        if m > d2 or (m < d2 and m > d1):
            raise InternalError(f"multiplicity {m} violates the column-degree bounds ({d1}, {d2})")
        rep = SingularPointReport(f, K, p, m, len(branches), branches, delta, ts,
                                  f.deg // ki, q, fiber)
        if tree:
            rep.infinitely_near = multiplicity_tree(phi, p, delta=delta)
        reports.append(rep)
    return reports


def genus_check(g: ParamTriple, reports=None) -> bool:
    if reports is None:
        reports = analyze_singularities(g, tree=False)
    return sum(r.conjugacy_count * r.delta for r in reports) == comb(g.d - 1, 2)


# ---------------------------------------------------------------------------
# quartics

QUARTIC_SINGULARITIES = {
    (2, 1, 2): ("A1", "Node", "(2:1,1)"),
    (2, 1, 1): ("A2", "Cusp", "(2:1)"),
    (2, 2, 2): ("A3", "Tacnode", "(2:2:1,1)"),
    (2, 2, 1): ("A4", "Ramphoid Cusp", "(2:2:1)"),
    (2, 3, 2): ("A5", "Oscnode", "(2:2:2:1,1)"),
    (2, 3, 1): ("A6", "A6-Cusp", "(2:2:2:1)"),
    (3, 3, 3): ("D4", "Ordinary Triple Point", "(3:1,1,1)"),
    (3, 3, 2): ("D5", "Tacnode Cusp", "(3:1,1)"),
    (3, 3, 1): ("E6", "Multiplicity 3 Cusp", "(3:1)"),
}

# configuration -> exponents of c_g over the algebraic closure
QUARTIC_CG_SHAPES = {
    "(2:1,1)^3": (1, 1, 1, 1, 1, 1),
    "(2:2:1,1),(2:1,1)": (2, 2, 1, 1),
    "(2:1,1)^2,(2:1)": (2, 1, 1, 1, 1),
    "(2:2:2:1,1)": (3, 3),
    "(2:2:1),(2:1,1)": (4, 1, 1),
    "(2:2:1,1),(2:1)": (2, 2, 2),
    "(2:1,1),(2:1)^2": (2, 2, 1, 1),
    "(2:2:2:1)": (6,),
    "(2:2:1),(2:1)": (4, 2),
    "(2:1)^3": (2, 2, 2),
    "(3:1,1,1)": (2, 2, 2),
    "(3:1,1)": (4, 2),
    "(3:1)": (6,),
}
QUARTIC_LABELS = tuple(QUARTIC_CG_SHAPES)

# the two configurations the row-ideal methods cannot tell apart share a
# QCP element
_QCP_MERGE = {"(2:2:1),(2:1,1)": "(2:2:1,1),(2:1)"}


@dataclass
class QuarticType:
    label: str
    points: List[Tuple[str, str, int]]
    qcp: str
    bqp: Optional[str]


def configuration_label(triples) -> str:
    """Label from the (m, delta, s) of each point, conjugates repeated."""
    keyed = sorted(triples, key=lambda t: (-t[0], -t[1], -t[2]))
    counts = Counter(keyed)
    parts = []
    for t in sorted(counts, key=lambda t: (-t[0], -t[1], -t[2])):
        name = QUARTIC_SINGULARITIES[t][2]
        parts.append(name if counts[t] == 1 else f"{name}^{counts[t]}")
    return ",".join(parts)


def cg_shape(cond: ConductorResult) -> Tuple[int, ...]:
    return tuple(sorted((t for f, t in cond.factors for _ in range(f.deg)), reverse=True))


def quartic_classify(g: ParamTriple, reports=None, cond=None) -> QuarticType:
    if g.d != 4:
        raise ValueError("quartic classification needs degree 4")
    if cond is None:
        cond = conductor_gcd(g)
    if reports is None:
        reports = analyze_singularities(g, cond=cond, tree=False)
    triples, pts = [], []
    for r in reports:
        key = (r.m, r.delta, r.s)
        if key not in QUARTIC_SINGULARITIES:
            raise InternalError(f"(m, delta, s) = {key} is not a quartic singularity")
        for _ in range(r.conjugacy_count):
            triples.append(key)
        modern, _, seq = QUARTIC_SINGULARITIES[key]
        pts.append((modern, seq, r.conjugacy_count))
        if r.infinitely_near is not None:
            got = r.multiplicity_sequence
            if got is not None and f"({got})" != seq:
                raise InternalError(f"blow-up sequence {got} disagrees with {seq}")
    label = configuration_label(triples)
    if label not in QUARTIC_CG_SHAPES:
        raise InternalError(f"{label} is not one of the 13 quartic configurations")
    if cg_shape(cond) != QUARTIC_CG_SHAPES[label]:
        raise InternalError(f"c_g exponents {cg_shape(cond)} do not fit configuration {label}")
    bqp = label if all(t[0] == 2 for t in triples) else None
    return QuarticType(label, pts, _QCP_MERGE.get(label, label), bqp)


def mult_c_report(g: ParamTriple) -> str:
    """Configuration of multiplicity-d/2 points, or "n/a" when the degree
    is odd or the triple unbalanced."""
    from .biproj import cp_configuration
    from .syzygy import is_balanced

    if g.d % 2 or not is_balanced(g)[0]:
        return "n/a"
    return cp_configuration(g)[0]
