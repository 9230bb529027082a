import os
import sys
from fractions import Fraction

import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.core import Angle  # noqa: E402
from theta_envelopes.curves.elliptic import CurvePoint  # noqa: E402
from theta_envelopes.envelopes import (  # noqa: E402
    cos_tau,
    envelope_for_multiple,
    envelope_from_tau_triangle,
    envelope_from_triangle,
    failed_equations,
    generate_envelopes,
    generator_point,
    heron_identity,
    infinitely_many_ratios,
    normalize_ratio,
    ratio,
    ratio_dual,
    reflect_dual,
    scale,
    tau_triangle,
    verify,
)
from theta_envelopes.errors import ConsistencyError, DomainError  # noqa: E402
from theta_envelopes.models import Envelope, Triangle  # noqa: E402


def envelope(r, s, *values):
    return Envelope(Angle(r, s), *(Fraction(v) for v in values))


def test_verify_known_envelopes(unit_envelope):
    assert verify(unit_envelope, 1)
    assert failed_equations(unit_envelope, 2) == [3]
    # n = 7 for cos θ = 1/2
    assert verify(envelope(2, 1, "143/42", "20/7", "19/6", "1256/1001", "3583/858"), 7)


def test_failed_equations_names_each_equation():
    broken = envelope(2, 1, 2, "5/4", "7/4", "7/4", "13/5")
    assert failed_equations(broken, 3) == [2]
    assert failed_equations(broken, 4) == [2, 3]


def test_envelope_rejects_nonpositive_components(right_angle):
    with pytest.raises(DomainError):
        Envelope(right_angle, 0, 1, 1, 1, 1)


def test_require_valid_raises_consistency_error():
    with pytest.raises(ConsistencyError):
        envelope(2, 1, 1, 1, 1, 1, 1).require_valid()


def test_scale(unit_envelope):
    doubled = scale(unit_envelope, 2)
    assert doubled.a == Fraction(4, 5)
    assert verify(doubled, 4)
    with pytest.raises(DomainError):
        scale(unit_envelope, 0)


def test_reflect_dual_keeps_n():
    env = envelope(5, 3, "7140/2561", "877975/522444", "455/204", "2024/17927", "20/7")
    dual = reflect_dual(env)
    assert dual.angle == Angle(5, -3)
    assert dual.quintuple == (env.a, env.d, env.e, env.b, env.c)
    assert verify(dual, 1)


def test_ratio_dual_multiplies_n_by_the_ratio():
    env = envelope(2, 1, "12/7", "9/14", "3/2", "20/7", 4)
    assert verify(env, 3)
    assert ratio(env) == Fraction(40, 9)
    dual = ratio_dual(env)
    assert dual == envelope(2, -1, "20/7", "12/7", 4, "160/21", "20/3")
    assert dual.equation_failures() == []
    assert dual.n_value == Fraction(40, 3)
    assert dual.certified_n is None


def test_normalize_ratio(unit_envelope):
    assert ratio(unit_envelope) < 1
    normalized = normalize_ratio(unit_envelope)
    assert ratio(normalized) == 1 / ratio(unit_envelope)
    assert normalize_ratio(normalized) == normalized


@pytest.mark.parametrize("values, r, s, cosine", [
    (("2/5", "143/60", "29/12", "7/60", "5/12"), 1, 0, Fraction(-17, 145)),
    ((6, "11/5", 5, "14/5", 8), 5, 3, Fraction(4, 5)),
    (("12/7", "9/14", "3/2", "20/7", 4), 2, 1, Fraction(1, 2)),
])
def test_cos_tau(values, r, s, cosine):
    assert cos_tau(envelope(r, s, *values)) == cosine


def test_tau_triangle():
    triangle = tau_triangle(envelope(5, 3, 6, "11/5", 5, "14/5", 8))
    assert triangle.sides == (5, 8, 5)
    assert triangle.context_angle == Angle(5, 4)


@pytest.mark.parametrize("r, s, values, n", [
    (1, 0, ("2/5", "143/60", "29/12", "7/60", "5/12"), 1),
    (2, 1, ("12/7", "9/14", "3/2", "20/7", 4), 3),
    (5, 3, (6, "11/5", 5, "14/5", 8), 6),
])
def test_tau_triangle_area(r, s, values, n):
    """16 area^2 of the τ-triangle is 4 n^2 (r^2 - s^2)."""
    assert tau_triangle(envelope(r, s, *values)).heron16 == 4 * n * n * (r * r - s * s)


@pytest.mark.parametrize("theta, tau, n_prime, sides, expected, n", [
    ((5, 3), (5, 4), 3, (15, 24, 15), (6, "11/5", 5, "14/5", 8), 6),
    ((5, 3), (1, 0), 4, (6, 8, 10), (3, "18/5", 3, "7/5", 4), 3),
    ((5, 3), (1, 0), 1, (3, 4, 5), (3, "18/5", 3, "7/5", 4), 3),
    ((2, 1), (2, 1), 1, (3, 8, 7), ("12/7", "9/14", "3/2", "20/7", 4), 3),
])
def test_envelope_from_tau_triangle(theta, tau, n_prime, sides, expected, n):
    built = envelope_from_tau_triangle(Angle(*theta), Angle(*tau), n_prime, sides)
    assert built == envelope(*theta, *expected)
    assert verify(built, n)
    assert cos_tau(built) == Angle(*tau).cosine


def test_envelope_from_tau_triangle_hypotheses(angle_5_3, angle_2_1, right_angle):
    # ab/(4qn') = 12/20
    with pytest.raises(DomainError, match="ab = 4qnn'"):
        envelope_from_tau_triangle(angle_5_3, right_angle, 5, (3, 4, 5))
    # 3 = v^4 has no rational root
    with pytest.raises(DomainError, match="no rational v"):
        envelope_from_tau_triangle(angle_2_1, right_angle, 1, (3, 4, 5))
    # (3, 4, 6) does not enclose a right angle
    with pytest.raises(DomainError):
        envelope_from_tau_triangle(angle_5_3, right_angle, 1, (3, 4, 6))


def test_envelope_from_triangle(right_angle):
    triangle = Triangle((Fraction(5, 6), 5, Fraction(29, 6)))
    assert heron_identity(right_angle, 1, triangle) == 0
    built = envelope_from_triangle(right_angle, 1, triangle)
    assert built == envelope(1, 0, "2/5", "143/60", "29/12", "7/60", "5/12")


def test_envelope_from_triangle_wrong_area(right_angle):
    with pytest.raises(DomainError):
        envelope_from_triangle(right_angle, 1, (3, 4, 5))


def test_triangle_validation(right_angle):
    assert Triangle((3, 4, 5), right_angle).heron16 == 576
    with pytest.raises(DomainError):
        Triangle((1, 1, 3))
    with pytest.raises(DomainError):
        Triangle((3, 4, 6), right_angle)


def test_generator_point(right_angle, angle_2_1):
    T, Q1 = generator_point(right_angle, 1)
    assert T == 2
    assert Q1 == CurvePoint(1, -1)
    with pytest.raises(DomainError, match="Pythagorean"):
        generator_point(angle_2_1, 1)


@pytest.mark.parametrize("r, s, n, expected", [
    (1, 0, 1, ("2/5", "143/60", "29/12", "7/60", "5/12")),
    (5, 3, 1, ("7140/2561", "877975/522444", "455/204", "2024/17927", "20/7")),
    (5, -3, 1, ("204/91", "80/91", "20/7", "25085/18564", "2561/1428")),
    (1, 0, 2, ("1/2", "56/15", "113/30", "4/15", "17/30")),
])
def test_envelope_for_first_multiple(r, s, n, expected):
    assert envelope_for_multiple(Angle(r, s), n, 1) == envelope(r, s, *expected)


@pytest.mark.parametrize("r, s, n", [
    *[(r, s, n) for r, s in ((1, 0), (5, 3)) for n in (1, 2, 3, 5, 6, 7)],
    (5, 4, 1),
    (5, -3, 1),
])
def test_generated_envelopes_verify(r, s, n):
    envelopes = generate_envelopes(Angle(r, s), n, 3)
    assert len(set(envelopes)) == 3
    assert all(verify(env, n) for env in envelopes)


def test_generate_envelopes_in_parallel_matches_inline(thread_pool, right_angle):
    inline = generate_envelopes(right_angle, 1, 3)
    assert generate_envelopes(right_angle, 1, 3, workers=2) == inline


def test_generate_envelopes_rejects_bad_input(angle_2_1, right_angle):
    with pytest.raises(DomainError):
        generate_envelopes(angle_2_1, 1, 3)
    with pytest.raises(DomainError):
        generate_envelopes(right_angle, 1, 0)


def test_infinitely_many_ratios(right_angle):
    ratios = infinitely_many_ratios(right_angle, 1, 3)
    assert len(set(ratios)) == 3
    normalized = infinitely_many_ratios(right_angle, 1, 3, normalize=True)
    assert all(m >= 1 for m in normalized)


def test_infinitely_many_ratios_for_cos_three_fifths(angle_5_3):
    ratios = infinitely_many_ratios(angle_5_3, 1, 5)
    assert len(set(ratios)) == 5
    assert all(m > 0 for m in ratios)
