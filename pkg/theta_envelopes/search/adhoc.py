"""
Direct searches: quintuples by the chord method, non-2-torsion points on E_θ^n, and rank evidence on 𝒢_θ^m.
"""
import logging
from fractions import Fraction
from functools import partial
from math import gcd, isqrt

from theta_envelopes.core import Angle, to_rational
from theta_envelopes.curves.elliptic import CurvePoint, point_order
from theta_envelopes.curves.theta_curves import independent_point, make_E_theta, make_G_cubic
from theta_envelopes.errors import DomainError
from theta_envelopes.models import Envelope
from theta_envelopes.search.budget import Deadline, SearchBudget, SearchMode, SearchOutcome, SearchStatus
from theta_envelopes.search.points import integral_model, naive_points
from theta_envelopes.utils.workers import first_result

logger = logging.getLogger(__name__)


def chord_slopes(angle: Angle, slope_bound: int) -> list[tuple[Fraction, Fraction]]:
    """
    (k, β) for the lines through (0, 1) on X^2 - (2s/r)X + 1 = Y^2 with slope k = u/v,
    |k| < 1 and v <= slope_bound, keeping β = 2(k + s/r)/(1 - k^2) > 0 and 1 + kβ != 0.

    The second intersection is X = β, so b = βa and c = |1 + kβ| a solve the first equation.
    """
    cosine = angle.cosine
    slopes = []
    for v in range(1, slope_bound + 1):
        for u in range(-(v - 1), v):
            if gcd(u, v) != 1:
                continue
            k = Fraction(u, v)
            beta = 2 * (k + cosine) / (1 - k * k)
            if beta > 0 and 1 + k * beta != 0:
                slopes.append((k, beta))
    return slopes


def _candidates_of_height(h: int):
    for other in range(1, h + 1):
        if gcd(h, other) != 1:
            continue
        yield h, other
        if other < h:
            yield other, h


def _envelope_at(angle: Angle, n: int, slopes, p: int, q: int) -> Envelope | None:
    r, s = angle.r, angle.s
    for k, beta in slopes:
        b1, b2 = beta.numerator, beta.denominator
        # d = Nd/D; e^2 D^2 r^2 = W, all in integers
        nd = r * n * q * q * b2 - b1 * p * p
        if nd <= 0:
            continue
        w = r * (r * p ** 4 * b2 * b2 + r * nd * nd + 2 * s * p * p * b2 * nd)
        if w < 0:
            continue
        root = isqrt(w)
        if root * root != w:
            continue
        D = p * q * b2
        a = Fraction(p, q)
        return Envelope(angle, a, beta * a, abs(1 + k * beta) * a, Fraction(nd, D), Fraction(root, r * D))
    return None


def _search_band(angle: Angle, n: int, slopes, deadline: Deadline, band: tuple[int, int]) -> Envelope | None:
    low, high = band
    for h in range(low, high + 1):
        if deadline.expired():
            logger.debug("time limit reached at height %d", h)
            return None
        for p, q in _candidates_of_height(h):
            envelope = _envelope_at(angle, n, slopes, p, q)
            if envelope is not None:
                logger.debug("hit at height %d: a = %d/%d", h, p, q)
                return envelope
    return None


def _height_bands(bound: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1:
        return [(1, bound)]
    step = max(1, bound // (4 * workers))
    return [(low, min(low + step - 1, bound)) for low in range(1, bound + 1, step)]


def find_envelope_adhoc(angle: Angle, n: int, budget: SearchBudget, workers: int = 1) -> Envelope | None:
    """
    Searches for an envelope for n by enumerating a = p/q by height max(p, q).

    For each a and each chord slope, b and c come from the first equation, d is forced by
    a(b + d) = rn and e is accepted when the second equation gives a rational square.
    The first hit in height order is returned whatever the worker count; None means
    nothing was found within the budget.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    slopes = chord_slopes(angle, budget.slope_bound)
    search = partial(_search_band, angle, n, slopes, budget.start())
    envelope = first_result(search, _height_bands(budget.height_bound, workers), workers)
    if envelope is None:
        logger.info("no envelope for θ=%s, n=%d up to height %d", angle, n, budget.height_bound)
        return None
    return envelope.require_valid(n)


def theta_congruent_heuristic(angle: Angle, n: int, budget: SearchBudget, workers: int = 1) -> SearchOutcome:
    """
    YES with a non-2-torsion point of E_θ^n found within the budget, UNKNOWN otherwise.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    E = make_E_theta(angle, n)
    subject = f"θ={angle}, n={n}"
    for P in naive_points(E, budget, workers):
        if P.y != 0:
            return SearchOutcome(SearchMode.CONGRUENT, subject, SearchStatus.YES, P,
                                 f"non-2-torsion point on {E}")
    return SearchOutcome(SearchMode.CONGRUENT, subject, SearchStatus.UNKNOWN,
                         note=f"no non-2-torsion point up to height {budget.height_bound}")


def heuristic_rank_positive(angle: Angle, m, budget: SearchBudget, workers: int = 1) -> SearchOutcome:
    """
    YES with a point of infinite order on 𝒢_θ^m, tried first on the independent point 𝒫
    and then over a bounded-height search; UNKNOWN otherwise. Rank 0 is never claimed.
    """
    m = to_rational(m)
    if m <= 0:
        raise DomainError(f"m must be positive, got {m}")
    G = make_G_cubic(angle, m)
    subject = f"θ={angle}, m={m}"
    P = independent_point(angle, m)
    if point_order(G, P) is None:
        return SearchOutcome(SearchMode.RANK, subject, SearchStatus.YES, P, "independent point has infinite order")
    model, u = integral_model(G)
    for Q in naive_points(model, budget, workers):
        candidate = CurvePoint(Q.x / u ** 2, Q.y / u ** 3)
        if point_order(G, candidate) is None:
            return SearchOutcome(SearchMode.RANK, subject, SearchStatus.YES, candidate,
                                 f"search point of infinite order (height bound {budget.height_bound})")
    return SearchOutcome(SearchMode.RANK, subject, SearchStatus.UNKNOWN,
                         note=f"independent point is torsion; no other point of infinite order up to height {budget.height_bound}")
