"""Grammar coverage and error reporting for the expression/frame parsers."""

import pytest

from freedist.errors import ParseError
from freedist.parsing import (parse_expression, parse_frame_file,
                              parse_scalar, parse_vector_field)
from freedist.polynomials import Polynomial, chart
from freedist.scalars import ExactScalar

CH = chart(4)


def P(text):
    return parse_expression(text, CH)


def test_scalar_forms():
    assert parse_scalar("3") == ExactScalar.of(3)
    assert parse_scalar("-3/4") == ExactScalar.of(-3) / ExactScalar.of(4)
    assert parse_scalar("sqrt2") == ExactScalar.sqrt2()
    assert parse_scalar("1/2*sqrt2 + 1") == \
        ExactScalar.one() + ExactScalar.sqrt2().inverse()
    assert parse_scalar("(1 - sqrt2)*(1 + sqrt2)") == ExactScalar.of(-1)


def test_scalar_rejects_coordinates():
    with pytest.raises(ParseError):
        parse_scalar("x1 + 1")


def test_precedence_and_parentheses():
    assert P("2 + 3*x1") == (Polynomial.const(CH, ExactScalar.of(2))
                             + Polynomial.coordinate(
                                 CH, CH.x_index(1)).scale(3))
    assert P("(2 + 3)*x1") == Polynomial.coordinate(
        CH, CH.x_index(1)).scale(5)
    assert P("2*x1^3") == P("2*x1*x1*x1")
    assert P("(x1 + x2)*(x1 + x2)") == P("x1^2 + 2*x1*x2 + x2^2")


def test_power_binds_to_atoms_only():
    # the grammar attaches exponents to atoms, not parenthesized groups
    with pytest.raises(ParseError):
        P("(x1 + x2)^2")


def test_unary_minus():
    assert P("-x1") == -Polynomial.coordinate(CH, CH.x_index(1))
    assert P("3 - -x1") == P("3 + x1")
    assert P("-(x1 - x2)") == P("x2 - x1")


def test_pair_coordinate_antisymmetry():
    assert P("y[2,1]") == -P("y[1,2]")
    assert P("y[3,3]").is_zero()
    assert P("y[1,2] + y[2,1]").is_zero()


def test_sqrt2_in_polynomials():
    p = P("sqrt2*x1")
    assert p * p == P("2*x1^2")


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        parse_expression("x1 + @", CH)
    assert exc.value.line == 1
    assert exc.value.col == 6


def test_vector_field_round_trip():
    v = parse_vector_field("Dx1 - x2*Dy[1,2] + sqrt2*Dy[3,4]", CH)
    assert v.components[CH.x_index(1)] == Polynomial.const(
        CH, ExactScalar.one())
    assert v.components[CH.y_index(1, 2)] == -Polynomial.coordinate(
        CH, CH.x_index(2))
    assert v.components[CH.y_index(3, 4)] == Polynomial.const(
        CH, ExactScalar.sqrt2())


def test_vector_field_pair_direction_antisymmetry():
    assert parse_vector_field("Dy[2,1]", CH) == -parse_vector_field(
        "Dy[1,2]", CH)


def test_frame_file_parses_fixture():
    from conftest import data_path
    with open(data_path("flat_l4.frame"), encoding="utf-8") as fh:
        l, fields = parse_frame_file(fh.read())
    assert l == 4
    assert len(fields) == 4
    assert fields[3].components[fields[3].chart.x_index(4)] == \
        Polynomial.const(fields[3].chart, ExactScalar.one())


def test_frame_file_comments_and_blank_lines():
    text = """# leading comment

l: 3
X1: Dx1   # trailing comment
X2: Dx2
X3: Dx3 + x1*Dy[1,2]
"""
    l, fields = parse_frame_file(text)
    assert l == 3 and len(fields) == 3


def test_frame_file_bad_header():
    with pytest.raises(ParseError):
        parse_frame_file("X1: Dx1\n")


def test_frame_file_wrong_order():
    with pytest.raises(ParseError):
        parse_frame_file("l: 2\nX2: Dx2\nX1: Dx1\n")


def test_frame_file_missing_field():
    with pytest.raises(ParseError):
        parse_frame_file("l: 3\nX1: Dx1\nX2: Dx2\n")


def test_frame_file_syntax_error_location():
    from conftest import data_path
    with open(data_path("bad_syntax.frame"), encoding="utf-8") as fh:
        text = fh.read()
    with pytest.raises(ParseError) as exc:
        parse_frame_file(text)
    assert exc.value.line == 3
    assert exc.value.message
    assert f"line {exc.value.line}" in str(exc.value)


def test_expression_round_trip_via_to_expr():
    for text in ("x1^2*y[1,2] - 1/2", "sqrt2*y[3,4] + x2*x3",
                 "-x1 + 2*y[1,4] - 3/5*y[2,3]^2"):
        p = P(text)
        assert parse_expression(p.to_expr(), CH) == p
