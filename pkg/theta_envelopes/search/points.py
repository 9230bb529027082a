"""
Bounded-height rational point search on integral Weierstrass models.

On y^2 = x^3 + a2 x^2 + a4 x + a6 with integer coefficients every rational point has
x = p/e^2 and y = q/e^3 with gcd(p, e) = 1, so only those x are tried.
"""
import logging
from fractions import Fraction
from functools import partial
from math import gcd, lcm

from theta_envelopes.core import sqrt_exact
from theta_envelopes.curves.elliptic import CubicCurve, CurvePoint
from theta_envelopes.errors import DomainError
from theta_envelopes.search.budget import Deadline, SearchBudget
from theta_envelopes.utils.workers import run_ordered

logger = logging.getLogger(__name__)


def integral_model(E: CubicCurve) -> tuple[CubicCurve, int]:
    """
    (E', u) with E' integral, related to E by (x, y) -> (u^2 x, u^3 y).
    """
    u = lcm(*(c.denominator for c in (E.a2, E.a4, E.a6)))
    return CubicCurve(E.a2 * u ** 2, E.a4 * u ** 4, E.a6 * u ** 6), u


def point_height(P: CurvePoint) -> int:
    """max(|p|, e) for x = p/e^2."""
    e = sqrt_exact(P.x.denominator)
    return max(abs(P.x.numerator), int(e))


def _point_key(P: CurvePoint):
    return point_height(P), P.x, P.y


def _points_in_band(E: CubicCurve, bound: int, deadline: Deadline, band: tuple[int, int]) -> list[CurvePoint]:
    low, high = band
    found = []
    for e in range(1, bound + 1):
        if deadline.expired():
            logger.debug("time limit reached at denominator %d", e)
            break
        for p in range(low, high + 1):
            if gcd(p, e) != 1:
                continue
            points = _points_at(E, p, e)
            if points:
                found.extend(points)
    return found


def _points_at(E: CubicCurve, p: int, e: int) -> list[CurvePoint] | None:
    x = Fraction(p, e * e)
    value = E.rhs(x)
    y = sqrt_exact(value) if value >= 0 else None
    if y is None:
        return None
    return [CurvePoint(x, y)] if y == 0 else [CurvePoint(x, -y), CurvePoint(x, y)]


def _numerator_bands(bound: int, workers: int) -> list[tuple[int, int]]:
    width = 2 * bound + 1
    chunks = max(1, workers)
    step = -(-width // chunks)
    return [(low, min(low + step - 1, bound)) for low in range(-bound, bound + 1, step)]


def naive_points(E: CubicCurve, budget: SearchBudget, workers: int = 1,
                 deadline: Deadline | None = None) -> list[CurvePoint]:
    """
    All affine rational points with x = p/e^2, |p| <= bound, 1 <= e <= bound.

    The result is closed under negation and sorted by (height, x, y).

    Raises:
        DomainError: if E is not an integral model (see integral_model).
    """
    if not E.is_integral:
        raise DomainError(f"{E} is not an integral model; clear denominators with integral_model first")
    deadline = deadline or budget.start()
    bands = _numerator_bands(budget.height_bound, workers)
    chunks = run_ordered(partial(_points_in_band, E, budget.height_bound, deadline), bands, workers)
    points = sorted({P for chunk in chunks for P in chunk}, key=_point_key)
    logger.debug("found %d points on %s up to height %d", len(points), E, budget.height_bound)
    return points
