import pytest

from mahler import QQ, FpFunctionField, parse_expression
from mahler.errors import ParseError
from mahler.series import RationalFunction


def rf(text, field=QQ):
    return parse_expression(text, field)


def test_precedence():
    assert rf("1+2*z^2") == rf("1 + (2*(z^2))")
    assert rf("-z^2") == -rf("z^2")
    assert rf("2^-1") == rf("1/2")
    assert rf("z**3") == rf("z^3")


def test_cancellation():
    assert rf("(z^2-1)/(z-1)") == rf("z+1")


def test_negative_power():
    r = rf("z^(-2)")
    assert r == RationalFunction.z(QQ, -2)
    assert r.valuation() == -2


def test_theta_symbol():
    F = FpFunctionField(3)
    a = rf("(z^3-theta)*(z^9-theta)", F)
    assert a.num.deg == 12


@pytest.mark.parametrize("text,pos", [
    ("1 + ", 3),
    ("z ^ 1.5", 4),
    ("2*w", 2),
    ("(z+1", 4),
    ("z $ 1", 2),
])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as ei:
        rf(text)
    assert ei.value.pos == pos
    assert "position %d" % pos in str(ei.value)


def test_division_by_zero():
    with pytest.raises(ParseError, match="division by zero"):
        rf("1/(z-z)")


def test_non_string():
    with pytest.raises(ParseError):
        parse_expression(3, QQ)
