import os
import sys
from fractions import Fraction

import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.core import (  # noqa: E402
    Angle,
    Surd,
    is_square,
    make_angle,
    parse_rational,
    sqrt_exact,
    square_class,
    squarefree_part,
    to_rational,
)
from theta_envelopes.errors import DomainError  # noqa: E402


def test_parse_rational_reduces():
    assert parse_rational("6/8") == Fraction(3, 4)
    assert parse_rational(" -6 / 8 ") == Fraction(-3, 4)
    assert parse_rational("7") == Fraction(7)


@pytest.mark.parametrize("text", ["0.5", "1e3", "a/b", "", "1/0"])
def test_parse_rational_rejects_inexact_text(text):
    """Decimals, exponents and zero denominators never become rationals."""
    with pytest.raises(DomainError):
        parse_rational(text)


def test_to_rational_rejects_floats():
    with pytest.raises(DomainError):
        to_rational(0.5)
    assert to_rational("2/3") == Fraction(2, 3)
    assert to_rational(5) == Fraction(5)


def test_sqrt_exact():
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_exact(0) == 0
    assert sqrt_exact(2) is None
    assert sqrt_exact(Fraction(4, 3)) is None


def test_sqrt_exact_negative_raises():
    with pytest.raises(DomainError):
        sqrt_exact(-4)


def test_is_square_is_false_for_negatives():
    assert is_square(Fraction(25, 49))
    assert not is_square(-4)


def test_squarefree_part_and_square_class():
    assert squarefree_part(12) == 3
    assert squarefree_part(Fraction(8, 3)) == 6
    assert squarefree_part(-5) == 5
    assert square_class(-12) == (-1, 3)
    with pytest.raises(DomainError):
        squarefree_part(0)


def test_angle_pythagorean_fields():
    angle = make_angle(5, 3)
    assert angle.t == 4
    assert angle.is_pythagorean
    assert angle.cosine == Fraction(3, 5)
    assert str(angle) == "(5,3)"

    assert Angle(1, 0).t == 1
    assert Angle(2, 1).t is None
    assert Angle(2, 1).t_squared == 3


def test_angle_reflect():
    assert Angle(5, 3).reflect() == Angle(5, -3)
    assert Angle(5, -3).reflect().reflect() == Angle(5, -3)


@pytest.mark.parametrize("r, s, relation", [
    (0, 0, "r >= 1"),
    (2, 2, "|s| < r"),
    (3, -4, "|s| < r"),
    (4, 2, "gcd"),
])
def test_angle_constraints_name_the_relation(r, s, relation):
    with pytest.raises(DomainError) as excinfo:
        make_angle(r, s)
    assert relation in str(excinfo.value)


def test_surd_normalizes_radicand():
    assert Surd.sqrt_of(12) == Surd(0, 2, 3)
    assert Surd(0, 1, 8) == Surd(0, 2, 2)
    assert Surd(1, 1, 4) == Surd(3)
    assert Surd.sqrt_of(Fraction(9, 4)).rational_value() == Fraction(3, 2)


def test_surd_arithmetic():
    product = Surd(1, 1, 2) * Surd(1, -1, 2)
    assert product == Surd(-1)
    assert product.is_rational
    assert Surd(1, 1, 2) + Surd(1, -1, 2) == Surd(2)
    assert 3 - Surd(0, 1, 2) == Surd(3, -1, 2)


def test_surd_mixed_radicands_are_rejected():
    with pytest.raises(DomainError):
        Surd(0, 1, 2) + Surd(0, 1, 3)


def test_surd_sign():
    assert Surd(3, -2, 2).sign() == 1
    assert Surd(1, -1, 2).sign() == -1
    assert Surd(-3, 2, 2).sign() == -1
    assert Surd(0).sign() == 0


def test_surd_str():
    assert str(Surd(16, 8, 3)) == "16 + 8√3"
    assert str(Surd(0, 1, 2)) == "√2"
    assert str(Surd(0, -1, 2)) == "-√2"
    assert str(Surd(Fraction(1, 2))) == "1/2"


def test_irrational_surd_has_no_rational_value():
    with pytest.raises(DomainError):
        Surd(0, 1, 2).rational_value()
