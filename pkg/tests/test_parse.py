from fractions import Fraction

import pytest
from hypothesis import given

from conftest import XY, XYZ, polynomials
from nashblow.parse import ParseError, UnknownVariable, parse_expression
from nashblow.poly import VariableContext

C12 = VariableContext(["x1", "x2"])


def test_simple_expression():
    p = parse_expression("x1*x2^2 - 3/2", C12)
    assert p.terms == {(1, 2): Fraction(1), (0, 0): Fraction(-3, 2)}


def test_zero():
    assert parse_expression("0", C12).terms == {}


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as e:
        parse_expression("x1 + x9", C12)
    assert e.value.pos == 5


@pytest.mark.parametrize(
    "text, pos",
    [("x1 +", 4), ("x1 ** 2", 4), ("(x1", 3), ("x1 $ 2", 3), ("", 0), ("x1 x2", 3)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_expression(text, C12)
    assert e.value.pos == pos


def test_negative_exponent():
    with pytest.raises(ParseError, match="negative exponent"):
        parse_expression("x1^-2", C12)


def test_division_rules():
    assert parse_expression("x1/2", C12) == C12.var("x1").scale(Fraction(1, 2))
    with pytest.raises(ParseError):
        parse_expression("x1/x2", C12)
    with pytest.raises(ParseError):
        parse_expression("x1/0", C12)


def test_precedence_and_unary():
    p = parse_expression("-x1^2 + -(x2 - 1)*3", C12)
    assert str(p) == "-x1^2 - 3*x2 + 3"
    assert parse_expression("2^3*x1", C12) == C12.var("x1").scale(8)
    assert parse_expression("1.5*x1", C12) == C12.var("x1").scale(Fraction(3, 2))


def test_canonical_printing():
    assert str(parse_expression("x2 + x1^2 - 1/3 + x1*x2", C12)) == "x1^2 + x1*x2 + x2 - 1/3"
    assert str(C12.zero()) == "0"
    assert str(parse_expression("-x1", C12)) == "-x1"


@given(polynomials(XYZ, 4, 6))
def test_parse_print_roundtrip(p):
    text = str(p)
    q = parse_expression(text, XYZ)
    assert q == p
    assert str(q) == text
