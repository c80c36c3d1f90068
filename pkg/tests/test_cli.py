import io
import json

import jsonschema
import pytest
from gmpy2 import mpq

from syzcurve.cli import (
    REPORT_SCHEMA, InhomogeneousError, ParseError, parse_form, run_command, sample, serialize,
)
from syzcurve.fixtures import QUARTIC_FAMILIES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def triple_args(a, b, c):
    return ["--g1", a, "--g2", b, "--g3", c]


def test_parse_examples():
    f = parse_form("x^4 - 2*x^2*y^2 + y^4")
    assert f.deg == 4 and [int(f[i]) for i in range(5)] == [1, 0, -2, 0, 1]
    f = parse_form("3/2*x*y")
    assert f.deg == 2 and f[1] == mpq(3, 2)
    assert parse_form(" x * x *y ") == parse_form("x^2*y")
    assert serialize(parse_form("-x^2 + 3/2*x*y")) == "-x^2 + 3/2*x*y"


def test_inhomogeneous():
    with pytest.raises(InhomogeneousError) as ei:
        parse_form("x^2 + y")
    assert ei.value.degrees == [1, 2]
    assert (ei.value.line, ei.value.col) == (1, 7)


@pytest.mark.parametrize("text,line,col", [
    ("x^", 1, 3), ("x + + y", 1, 5), ("2*", 1, 3), ("x y", 1, 3), ("x^2 +\n 3 $ y^2", 2, 4),
    ("1/0*x", 1, 3), ("", 1, 1),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_form(text)
    assert (ei.value.line, ei.value.col) == (line, col)


def test_zero_form_needs_degree():
    with pytest.raises(ParseError):
        parse_form("x - x")
    assert parse_form("0", degree=3).is_zero()


def test_analyze_e6_schema():
    code, out, _ = run("analyze", *triple_args("x^4", "x^3*y", "y^4"))
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["quartic_type"] == "(3:1)"
    assert rep["singular_points"][0]["multiplicity_sequence"] == "3:1"
    assert rep["genus_check"] and rep["multc_configuration"] == "n/a"
    # polynomial fields round-trip
    for s in [rep["jacobian_gcd"], rep["conductor_gcd"]["poly"]] + sum(rep["hilbert_burch"]["entries"], []):
        if s != "0":
            assert serialize(parse_form(s)) == s


def test_analyze_schema_fixtures():
    for lab in ("(2:2:2:1)", "(2:1,1)^3"):
        code, out, _ = run("analyze", "--fixture", lab)
        assert code == 0
        rep = json.loads(out)
        jsonschema.validate(rep, REPORT_SCHEMA)
        assert rep["quartic_type"] == lab


def test_hb_command():
    code, out, _ = run("hb", *triple_args("x^2", "x*y", "y^2"))
    assert code == 0 and json.loads(out)["column_degrees"] == [1, 1]
    code, out, _ = run("hb", "--method", "generic", *triple_args("x^2", "x*y", "y^2"))
    assert code == 0 and json.loads(out)["column_degrees"] == [1, 1]


def test_not_birational():
    code, out, err = run("analyze", *triple_args("x^4", "x^2*y^2", "y^4"))
    assert code == 1
    rep = json.loads(out)
    assert (rep["r"], rep["e"], rep["birational"]) == (2, 2, False)
    assert rep["implicit_equation"] == "T1*T3 - T2^2"
    assert err.startswith("error:")


def test_base_points():
    code, out, _ = run("analyze", *triple_args("x^4", "x^3*y", "x^2*y^2"))
    assert code == 1
    rep = json.loads(out)
    assert rep["base_point_free"] is False and rep["common_factor"] == "x^2"


def test_syntax_error_exit():
    code, out, err = run("analyze", *triple_args("x^2 + y", "x*y", "y^2"))
    assert code == 1 and "degrees 1, 2" in json.loads(out)["error"]
    code, _, _ = run("analyze", *triple_args("x^2", "x^3", "y^2"))
    assert code == 1


def test_other_commands():
    g = triple_args("x^4", "x^3*y", "y^4")
    for cmd in ("multc", "quartic", "conductor", "verify"):
        code, out, _ = run(cmd, *g)
        assert code == 0, cmd
        json.loads(out)
    code, out, _ = run("quartic", *g)
    assert json.loads(out)["quartic_type"] == "(3:1)"
    code, out, _ = run("verify", *g)
    assert json.loads(out)["ok"] is True


def test_pretty():
    code, out, _ = run("hb", "--pretty", *triple_args("x^2", "x*y", "y^2"))
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    assert "column_degrees" in out


def test_fixtures_list():
    code, out, _ = run("fixtures")
    assert code == 0 and set(json.loads(out)) == set(QUARTIC_FAMILIES)


def test_sample_reproducible():
    a = run("sample", "--count", "8", "--degree", "4", "--seed", "3")
    b = run("sample", "--count", "8", "--degree", "4", "--seed", "3")
    assert a[0] == 0 and a[1] == b[1]
    c = run("sample", "--count", "8", "--degree", "4", "--seed", "4")
    assert c[1] != a[1]
    s = sample(5, 5, 0)
    assert json.dumps(s) == json.dumps(sample(5, 5, 0))
