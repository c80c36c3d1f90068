"""Command-line front end: form parsing, JSON reports, batch sampling.

    syzcurve analyze --g1 "x^4" --g2 "x^3*y" --g3 "y^4"
    syzcurve sample --count 100 --degree 4 --seed 1

Exit codes: 0 success, 1 invalid input (syntax, base points, not
birational), 2 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import List, Optional

from gmpy2 import mpq

from .algebra import QQ, InternalError
from .binforms import BinForm, bf_gcd_many
from .syzygy import HBMatrix, ParamTriple, base_point_free, birationality, hb_generic_balanced, hb_kernel, is_balanced

__all__ = ["ParseError", "InhomogeneousError", "Term", "parse_terms", "parse_form", "serialize",
           "curve_report", "REPORT_SCHEMA", "sample", "run_command", "main"]


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


class InhomogeneousError(ParseError):
    def __init__(self, degrees, line: int, col: int):
        self.degrees = sorted(set(degrees))
        super().__init__("inhomogeneous form, term degrees " + ", ".join(map(str, self.degrees)), line, col)


@dataclass(frozen=True)
class Term:
    sign: int
    coef: object  # mpq, absolute value
    ex: int
    ey: int
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^)|(\*)|(/)|([+-]))")


def _tokens(text: str):
    i, out = 0, []
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", *_linecol(text, i))
        kind = m.lastindex
        start = m.start(kind)
        out.append((("num", "var", "^", "*", "/", "sign")[kind - 1], m.group(kind), start))
        i = m.end()
    return out


def _linecol(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_terms(text: str) -> List[Term]:
    """Terms of ``text`` under the grammar

        form := [sign] term (sign term)*
        term := coef | [coef '*'] var ('*' var)*
        var  := ('x' | 'y') ['^' nat];  coef := int | int '/' nat
    """
    toks = _tokens(text)
    n = len(toks)
    k = 0

    def err(msg, at=None):
        pos = toks[at][2] if at is not None and at < n else (toks[k][2] if k < n else len(text))
        raise ParseError(msg, *_linecol(text, pos))

    def peek(kind):
        return k < n and toks[k][0] == kind

    if n == 0:
        raise ParseError("empty form", *_linecol(text, len(text)))
    terms = []
    first = True
    while k < n:
        sign = 1
        if peek("sign"):
            sign = -1 if toks[k][1] == "-" else 1
            k += 1
        elif not first:
            err("expected '+' or '-'")
        first = False
        if k >= n:
            err("term expected after sign")
        start = toks[k][2]
        coef = mpq(1)
        ex = ey = 0
        have_coef = False
        if peek("num"):
            coef = mpq(int(toks[k][1]))
            k += 1
            have_coef = True
            if peek("/"):
                k += 1
                if not peek("num"):
                    err("denominator expected after '/'")
                den = int(toks[k][1])
                if den == 0:
                    err("zero denominator")
                coef = coef / den
                k += 1
            if not peek("*"):
                terms.append(Term(sign, coef, 0, 0, start))
                continue
            k += 1
        while True:
            if not peek("var"):
                err("variable x or y expected" if have_coef or ex or ey else "term expected")
            v = toks[k][1]
            k += 1
            e = 1
            if peek("^"):
                k += 1
                if not peek("num"):
                    err("exponent expected after '^'")
                e = int(toks[k][1])
                k += 1
            if v == "x":
                ex += e
            else:
                ey += e
            if peek("*"):
                k += 1
                continue
            break
        terms.append(Term(sign, coef, ex, ey, start))
    return terms


def parse_form(text: str, degree: Optional[int] = None) -> BinForm:
    """Exact binary form from ``text``.  ``degree`` fixes the degree of a
    zero form and is checked against the terms otherwise."""
    terms = parse_terms(text)
    degs = [t.ex + t.ey for t in terms]
    if len(set(degs)) > 1:
        # point at the first term whose degree differs from the first one
        bad = next(t for t in terms if t.ex + t.ey != degs[0])
        raise InhomogeneousError(degs, *_linecol(text, bad.pos))
    d = degs[0]
    cs = {}
    for t in terms:
        cs[t.ex] = cs.get(t.ex, mpq(0)) + t.sign * t.coef
    if all(v == 0 for v in cs.values()):
        if degree is None:
            raise ParseError("the zero form has no degree", *_linecol(text, 0))
        return BinForm.zero(QQ, degree)
    if degree is not None and d != degree:
        raise ParseError(f"form of degree {d}, expected {degree}", *_linecol(text, 0))
    return BinForm.from_dict(QQ, d, cs)


def serialize(f: BinForm) -> str:
    return f.to_str()


def _parse_triple(texts) -> ParamTriple:
    forms = []
    for i, t in enumerate(texts):
        try:
            forms.append(parse_form(t))
        except ParseError as e:
            if "zero form" in e.msg:
                forms.append(None)
                continue
            e.args = (f"g{i + 1}: {e}",)
            raise
    degs = {f.deg for f in forms if f is not None}
    if not degs:
        raise ValueError("all three forms are zero")
    if len(degs) > 1:
        raise ValueError("forms of unequal degree " + ", ".join(str(f.deg) if f else "0" for f in forms))
    d = degs.pop()
    return ParamTriple(tuple(f if f is not None else BinForm.zero(QQ, d) for f in forms))


# ---------------------------------------------------------------------------
# reports

class InvalidInput(Exception):
    def __init__(self, msg: str, data: Optional[dict] = None):
        super().__init__(msg)
        self.data = data or {}


def _check_true(g: ParamTriple):
    """(r, e, phi) for a true triple; InvalidInput otherwise."""
    if not base_point_free(g):
        h = bf_gcd_many(list(g.g))
        raise InvalidInput("the forms have a common factor (base points)",
                           {"base_point_free": False, "common_factor": serialize(h)})
    phi = hb_kernel(g)
    r, e = birationality(g, phi)
    if r != 1:
        from .oracle import implicitize
        C = implicitize(g, phi, r)
        raise InvalidInput(f"the map is {r}-to-1 onto a curve of degree {e}",
                           {"base_point_free": True, "birational": False, "r": r, "e": e,
                            "implicit_equation": str(C)})
    return r, e, phi


def _balanced(g: ParamTriple) -> bool:
    return g.d % 2 == 0 and is_balanced(g)[0]


def _hb_json(phi: HBMatrix):
    return {"column_degrees": list(phi.degs), "entries": phi.entries_str()}


def _factors_json(factors):
    return [{"poly": serialize(f), "exponent": int(e)} for f, e in factors]


def _point_json(r) -> dict:
    return {
        "parameter_min_poly": serialize(r.factor),
        "conjugacy_count": r.conjugacy_count,
        "point": r.point_strings(),
        "m": r.m,
        "s": r.s,
        "branch_multiplicities": list(r.branch_multiplicities),
        "delta": r.delta,
        "t_exponents": list(r.t_exponents),
        "multiplicity_sequence": r.multiplicity_sequence,
    }


def curve_report(g: ParamTriple, tree: bool = True) -> dict:
    from .conductor import conductor_gcd
    from .singloc import analyze_singularities, genus_check, jacobian_gcd, mult_c_report, quartic_classify

    r, e, phi = _check_true(g)
    cond = conductor_gcd(g, phi)
    reps = analyze_singularities(g, phi, cond, tree=tree)
    qt = quartic_classify(g, reps, cond).label if g.d == 4 else None
    return {
        "degree": g.d,
        "base_point_free": True,
        "birational": True,
        "r": r,
        "e": e,
        "balanced": _balanced(g),
        "hilbert_burch": _hb_json(phi),
        "singular_points": [_point_json(s) for s in reps],
        "conductor_gcd": {"poly": serialize(cond.c_g), "factors": _factors_json(cond.factors)},
        "jacobian_gcd": serialize(jacobian_gcd(g)),
        "multc_configuration": mult_c_report(g),
        "quartic_type": qt,
        "genus_check": genus_check(g, reps),
    }


_INT = {"type": "integer"}
_STR = {"type": "string"}
_INTS = {"type": "array", "items": _INT}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["degree", "base_point_free", "birational", "r", "e", "balanced", "hilbert_burch",
                 "singular_points", "conductor_gcd", "jacobian_gcd", "multc_configuration",
                 "quartic_type", "genus_check"],
    "properties": {
        "degree": _INT,
        "base_point_free": {"type": "boolean"},
        "birational": {"type": "boolean"},
        "r": _INT,
        "e": _INT,
        "balanced": {"type": "boolean"},
        "hilbert_burch": {
            "type": "object",
            "required": ["column_degrees", "entries"],
            "properties": {
                "column_degrees": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
                "entries": {"type": "array", "minItems": 3, "maxItems": 3,
                            "items": {"type": "array", "items": _STR, "minItems": 2, "maxItems": 2}},
            },
        },
        "singular_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["parameter_min_poly", "conjugacy_count", "point", "m", "s",
                             "branch_multiplicities", "delta", "t_exponents", "multiplicity_sequence"],
                "properties": {
                    "parameter_min_poly": _STR,
                    "conjugacy_count": _INT,
                    "point": {"type": "array", "items": _STR, "minItems": 3, "maxItems": 3},
                    "m": _INT,
                    "s": _INT,
                    "branch_multiplicities": _INTS,
                    "delta": _INT,
                    "t_exponents": _INTS,
                    "multiplicity_sequence": {"type": ["string", "null"]},
                },
            },
        },
        "conductor_gcd": {
            "type": "object",
            "required": ["poly", "factors"],
            "properties": {
                "poly": _STR,
                "factors": {"type": "array", "items": {
                    "type": "object", "required": ["poly", "exponent"],
                    "properties": {"poly": _STR, "exponent": _INT}}},
            },
        },
        "jacobian_gcd": _STR,
        "multc_configuration": _STR,
        "quartic_type": {"type": ["string", "null"]},
        "genus_check": {"type": "boolean"},
    },
}


def hb_report(g: ParamTriple, method: str = "kernel") -> dict:
    if not base_point_free(g):
        raise InvalidInput("the forms have a common factor (base points)",
                           {"base_point_free": False, "common_factor": serialize(bf_gcd_many(list(g.g)))})
    if method == "generic":
        if not _balanced(g):
            raise InvalidInput("the closed form needs a balanced triple")
        phi = hb_generic_balanced(g)
    else:
        phi = hb_kernel(g)
    return {"degree": g.d, "method": method, "balanced": _balanced(g), **_hb_json(phi),
            "minors": [serialize(f) for f in phi.phi()]}


def multc_report(g: ParamTriple) -> dict:
    from .biproj import build_C_A, cp_configuration, gcd_I3A, gcd_shape, mu_entries, mu_I2C

    _check_true(g)
    if not _balanced(g):
        return {"degree": g.d, "balanced": False, "configuration": "n/a"}
    phi = hb_generic_balanced(g)
    C, A = build_C_A(phi)
    h = gcd_I3A(A)
    label, pts = cp_configuration(phi)
    shape = gcd_shape(h)
    return {
        "degree": g.d,
        "balanced": True,
        "configuration": label,
        "mu_I1": mu_entries(phi),
        "mu_I2C": mu_I2C(C),
        "gcd_I3A": serialize(h),
        "gcd_I3A_shape": list(shape) if shape is not None else None,
        "A": A.to_strings(),
        "points": [{"factor": serialize(p["factor"]), "exponent": p["exponent"],
                    "conjugates": p["conjugates"], "point": [p["node"].fmt(v) for v in p["point"]],
                    "infinitely_near": p["infinitely_near"]} for p in pts],
    }


def quartic_report(g: ParamTriple) -> dict:
    from .conductor import conductor_gcd
    from .singloc import analyze_singularities, cg_shape, quartic_classify

    if g.d != 4:
        raise InvalidInput(f"quartic classification needs degree 4, got {g.d}")
    _, _, phi = _check_true(g)
    cond = conductor_gcd(g, phi)
    reps = analyze_singularities(g, phi, cond)
    q = quartic_classify(g, reps, cond)
    return {
        "quartic_type": q.label,
        "points": [{"type": a, "sequence": s, "conjugacy_count": n} for a, s, n in q.points],
        "qcp": q.qcp,
        "bqp": q.bqp,
        "conductor_shape": list(cg_shape(cond)),
    }


def conductor_report(g: ParamTriple) -> dict:
    from .conductor import conductor_gcd

    _, _, phi = _check_true(g)
    cond = conductor_gcd(g, phi)
    return {"degree": cond.degree, "poly": serialize(cond.c_g), "factors": _factors_json(cond.factors),
            "generators": [serialize(f) for f in cond.generators]}


def verify_report(g: ParamTriple, seed: int = 0) -> dict:
    from .oracle import cross_validate

    _, _, phi = _check_true(g)
    rep = cross_validate(g, phi=phi, seed=seed)
    return {"ok": rep.ok, "checks": rep.checks, "diffs": rep.diffs}


# ---------------------------------------------------------------------------
# sampling

def _classify_sample(g: ParamTriple) -> dict:
    from .conductor import conductor_gcd
    from .singloc import analyze_singularities, mult_c_report, quartic_classify

    phi = hb_kernel(g)
    cond = conductor_gcd(g, phi)
    reps = analyze_singularities(g, phi, cond, tree=False)
    # singular points as (m, s, delta) with multiplicities, e.g. 10*(2,2,1)
    kinds = Counter((r.m, r.s, r.delta) for r in reps for _ in range(r.conjugacy_count))
    pts = ", ".join(f"{n}*({m},{s},{dl})" for (m, s, dl), n in sorted(kinds.items(), reverse=True))
    out = {"column_degrees": "%d,%d" % phi.degs, "points (m,s,delta)": pts or "smooth"}
    if g.d % 2 == 0:
        out["CP"] = mult_c_report(g)
    if g.d == 4:
        q = quartic_classify(g, reps, cond)
        out["quartic_type"] = q.label
        out["QCP"] = q.qcp
        out["BQP"] = q.bqp or "outside BQP"
    if sum(r.conjugacy_count * r.delta for r in reps) != comb(g.d - 1, 2):
        raise InternalError("genus budget violated")
    return out


def sample(count: int, degree: int, seed: int, lo: int = -9, hi: int = 9) -> dict:
    """Draw ``count`` random integer triples, keep the true ones and
    tabulate their strata.  Deterministic for a fixed seed."""
    from .fixtures import random_triple

    rng = random.Random(seed)
    rejected = Counter()
    tables = {}
    n_true = 0
    for _ in range(count):
        g = random_triple(rng, degree, lo, hi)
        if all(f.is_zero() for f in g.g) or not base_point_free(g):
            rejected["base_points"] += 1
            continue
        if birationality(g)[0] != 1:
            rejected["not_birational"] += 1
            continue
        n_true += 1
        for k, v in _classify_sample(g).items():
            tables.setdefault(k, Counter())[v] += 1
    return {
        "degree": degree, "seed": seed, "count": count, "coefficient_range": [lo, hi],
        "true_triples": n_true, "rejected": dict(sorted(rejected.items())),
        "tables": {k: dict(sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))) for k, c in tables.items()},
    }


# ---------------------------------------------------------------------------
# driver

def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + "[" + ", ".join(_scalar(v) for v in obj) + "]"
        return "\n".join((f"{pad}-\n" + _pretty(v, indent + 1)) for v in obj)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="syzcurve", description="Singularities of rational plane curves from syzygies.")
    fmt = argparse.ArgumentParser(add_help=False)
    grp = fmt.add_mutually_exclusive_group()
    grp.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    grp.add_argument("--pretty", dest="pretty", action="store_true", help="indented text output")
    trip = argparse.ArgumentParser(add_help=False)
    trip.add_argument("--g1")
    trip.add_argument("--g2")
    trip.add_argument("--g3")
    trip.add_argument("--fixture", help="quartic configuration label, e.g. '(2:2:2:1,1)'")
    fmt.set_defaults(pretty=False)
    sub = p.add_subparsers(dest="cmd", required=True)
    a = sub.add_parser("analyze", parents=[fmt, trip], help="full curve report")
    a.add_argument("--no-tree", action="store_true", help="skip multiplicity sequences")
    h = sub.add_parser("hb", parents=[fmt, trip], help="Hilbert-Burch matrix")
    h.add_argument("--method", choices=["kernel", "generic"], default="kernel")
    sub.add_parser("multc", parents=[fmt, trip], help="multiplicity-d/2 configuration")
    sub.add_parser("quartic", parents=[fmt, trip], help="13-way quartic classification")
    sub.add_parser("conductor", parents=[fmt, trip], help="conductor form c_g")
    v = sub.add_parser("verify", parents=[fmt, trip], help="cross-check against the implicit equation")
    v.add_argument("--seed", type=int, default=0)
    s = sub.add_parser("sample", parents=[fmt], help="stratum statistics of random triples")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    sub.add_parser("fixtures", parents=[fmt], help="list the quartic fixture corpus")
    return p


def _triple_from(args) -> ParamTriple:
    if args.fixture:
        from .fixtures import quartic_fixture
        if any((args.g1, args.g2, args.g3)):
            raise InvalidInput("give either --fixture or --g1/--g2/--g3")
        try:
            return ParamTriple(tuple(quartic_fixture(args.fixture).phi()))
        except ValueError as e:
            raise InvalidInput(str(e)) from None
    if None in (args.g1, args.g2, args.g3):
        raise InvalidInput("--g1, --g2 and --g3 are all required")
    return _parse_triple((args.g1, args.g2, args.g3))


def _fixture_list() -> dict:
    from .fixtures import QUARTIC_FAMILIES, quartic_fixture

    out = {}
    for lab in QUARTIC_FAMILIES:
        phi = quartic_fixture(lab)
        out[lab] = {"hilbert_burch": _hb_json(phi), "g": [serialize(f) for f in phi.phi()]}
    return out


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    try:
        if args.cmd == "sample":
            if args.count < 0 or args.degree < 1:
                raise InvalidInput("--count must be >= 0 and --degree >= 1")
            res = sample(args.count, args.degree, args.seed)
        elif args.cmd == "fixtures":
            res = _fixture_list()
        else:
            g = _triple_from(args)
            if args.cmd == "analyze":
                res = curve_report(g, tree=not args.no_tree)
            elif args.cmd == "hb":
                res = hb_report(g, args.method)
            elif args.cmd == "multc":
                res = multc_report(g)
            elif args.cmd == "quartic":
                res = quartic_report(g)
            elif args.cmd == "conductor":
                res = conductor_report(g)
            else:
                res = verify_report(g, args.seed)
                if not res["ok"]:
                    _emit(res, args.pretty, out)
                    print("error: cross-validation failed", file=err)
                    return 2
    except InvalidInput as e:
        _emit({"error": str(e), **e.data}, args.pretty, out)
        print(f"error: {e}", file=err)
        return 1
    except (ParseError, ValueError) as e:
        _emit({"error": str(e)}, args.pretty, out)
        print(f"error: {e}", file=err)
        return 1
    except (InternalError, AssertionError, ZeroDivisionError) as e:
        print(f"internal error: {e}", file=err)
        return 2
    _emit(res, args.pretty, out)
    return 0


def _emit(obj, pretty: bool, out):
    out.write((_pretty(obj) if pretty else json.dumps(obj, indent=2, ensure_ascii=False)) + "\n")


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
