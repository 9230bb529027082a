"""
Envelope operations: verification, dualities, the τ-triangle, and the constructive generators.
"""
import logging
from fractions import Fraction
from functools import partial
from itertools import count as count_from

from theta_envelopes.core import Angle, sqrt_exact, to_rational
from theta_envelopes.curves.elliptic import CurvePoint, on_curve, scalar_mul
from theta_envelopes.curves.theta_curves import make_E_T
from theta_envelopes.errors import ConsistencyError, ConstructionError, DomainError
from theta_envelopes.models import Envelope, Triangle
from theta_envelopes.transforms import et_to_ct, triangle_from_ct_point
from theta_envelopes.utils.workers import run_ordered

logger = logging.getLogger(__name__)

# Side orders tried by envelope_from_triangle: the given order, its rotations, then reflections.
SIDE_ORDERS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (2, 1, 0), (0, 2, 1))

NON_PYTHAGOREAN_MESSAGE = (
    "the constructive generator needs a Pythagorean angle (r^2 - s^2 a perfect square); "
    "whether the construction extends to arbitrary angles is an open question"
)


def verify(env: Envelope, n: int) -> bool:
    """True iff all three defining equations hold exactly for n."""
    return not env.equation_failures(n)


def failed_equations(env: Envelope, n: int) -> list[int]:
    return env.equation_failures(n)


def scale(env: Envelope, k) -> Envelope:
    """(ka, kb, kc, kd, ke), an envelope for n k^2."""
    k = to_rational(k)
    if k <= 0:
        raise DomainError(f"scale factor must be positive, got {k}")
    return Envelope(env.angle, *(k * value for value in env.quintuple))


def reflect_dual(env: Envelope) -> Envelope:
    """(a, d, e, b, c) for π - θ, an envelope for the same n."""
    return Envelope(env.angle.reflect(), env.a, env.d, env.e, env.b, env.c)


def ratio(env: Envelope) -> Fraction:
    """m with d = m b."""
    return env.d / env.b


def ratio_dual(env: Envelope) -> Envelope:
    """(d, a, e, m a, m c) for π - θ: an envelope with ratio m for m n."""
    m = ratio(env)
    return Envelope(env.angle.reflect(), env.d, env.a, env.e, m * env.a, m * env.c)


def normalize_ratio(env: Envelope) -> Envelope:
    """The same n with ratio at least 1, reflecting when d < b."""
    return reflect_dual(env) if env.d < env.b else env


def cos_tau(env: Envelope) -> Fraction:
    """Cosine of the angle between the diagonals c and e."""
    a, b, c, d, e = env.quintuple
    return (a * a - b * d - env.angle.s * a * (b - d) / env.angle.r) / (c * e)


def tau_triangle(env: Envelope) -> Triangle:
    """
    The triangle (c, e, b + d), whose angle between c and e has cosine cos_tau(env).

    Raises:
        DomainError: if |cos τ| >= 1 (degenerate triangle).
    """
    cosine = cos_tau(env)
    if abs(cosine) >= 1:
        raise DomainError(f"degenerate τ-triangle: cos τ = {cosine}")
    tau = Angle(cosine.denominator, cosine.numerator)
    return Triangle((env.c, env.e, env.b + env.d), tau)


def envelope_from_tau_triangle(theta: Angle, tau: Angle, n_prime: int, tri) -> Envelope:
    """
    Builds an envelope with angle τ from a τ-triangle (a, b, c), a and b enclosing τ.

    n is read off as ab/(4 q n'). The hypothesis is r^2 - s^2 = n'^2 (q^2 - p^2) v^4 for a
    rational v; the triangle is scaled by v and the envelope is
    (x, y, a, c - y, b)/2 with x = 4rn/c, y = a^2/c - pab/(qc) + sx/r.

    Args:
        theta: The angle θ = (r, s).
        tau: The angle τ, stored as Angle(q, p) with cos τ = p/q.
        n_prime: The positive integer n'.
        tri: The triangle, as a Triangle or a tuple of three sides.

    Raises:
        DomainError: naming the failed hypothesis.
    """
    if not isinstance(n_prime, int) or n_prime < 1:
        raise DomainError(f"n' must be a positive integer, got {n_prime!r}")
    sides = tri.sides if isinstance(tri, Triangle) else tuple(to_rational(side) for side in tri)
    triangle = Triangle(sides, tau)
    q, p = tau.r, tau.s
    a, b, c = triangle.sides
    n_value = a * b / (4 * q * n_prime)
    if n_value.denominator != 1:
        raise DomainError(f"ab = 4qnn' fails: ab/(4qn') = {n_value} is not an integer")
    n = n_value.numerator
    v_squared = sqrt_exact(Fraction(theta.t_squared, n_prime ** 2 * tau.t_squared))
    v = sqrt_exact(v_squared) if v_squared is not None else None
    if v is None:
        raise DomainError(
            f"r^2 - s^2 = n'^2 (q^2 - p^2) v^4 has no rational v for θ={theta}, τ={tau}, n'={n_prime}"
        )
    a, b, c = (v * side for side in triangle.sides)
    r, s = theta.r, theta.s
    x = 4 * r * n / c
    y = a * a / c - p * a * b / (q * c) + s * x / r
    if not 0 < y < c:
        raise DomainError(f"the τ-triangle {triangle.sides} does not split into positive parts (y={y})")
    envelope = Envelope(theta, x / 2, y / 2, a / 2, (c - y) / 2, b / 2).require_valid(n)
    if cos_tau(envelope) != tau.cosine:
        raise ConsistencyError(f"{envelope} has cos τ = {cos_tau(envelope)}, expected {tau.cosine}")
    return envelope


def heron_identity(angle: Angle, n: int, tri: Triangle) -> Fraction:
    """64 n^2 (r^2 - s^2) - 16 area^2, zero exactly when the area is 2n sqrt(r^2 - s^2)."""
    return 64 * n * n * angle.t_squared - tri.heron16


def envelope_from_triangle(angle: Angle, n: int, tri) -> Envelope:
    """
    Envelope for n from a triangle (c, e, f) of area 2n sqrt(r^2 - s^2).

    With a = 4rn/f, b = (f^2 + c^2 - e^2)/2f + as/r and d = (f^2 + e^2 - c^2)/2f - as/r,
    the first side order giving b, d > 0 is halved into (a, b, c, d, e)/2.

    Raises:
        DomainError: if the area is wrong.
        ConstructionError: if no side order gives positive b and d.
    """
    triangle = tri if isinstance(tri, Triangle) else Triangle(tuple(tri))
    if heron_identity(angle, n, triangle) != 0:
        raise DomainError(f"triangle {triangle.sides} does not have area 2n sqrt(r^2 - s^2) for n={n}")
    r, s = angle.r, angle.s
    for order in SIDE_ORDERS:
        c, e, f = (triangle.sides[i] for i in order)
        a = 4 * r * n / f
        b = (f * f + c * c - e * e) / (2 * f) + a * s / r
        d = (f * f + e * e - c * c) / (2 * f) - a * s / r
        if b > 0 and d > 0:
            return Envelope(angle, a / 2, b / 2, c / 2, d / 2, e / 2).require_valid(n)
    raise ConstructionError(f"no side order of {triangle.sides} gives positive b and d")


def generator_point(angle: Angle, n: int) -> tuple[Fraction, CurvePoint]:
    """T = 2n sqrt(r^2 - s^2) and Q1 = (T^2/4, T(T^2 - 8)/8) on E_T."""
    if not angle.is_pythagorean:
        raise DomainError(NON_PYTHAGOREAN_MESSAGE)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    T = Fraction(2 * n * angle.t)
    Q1 = CurvePoint(T * T / 4, T * (T * T - 8) / 8)
    if not on_curve(make_E_T(T), Q1):
        raise ConsistencyError(f"Q1 = {Q1} is off E_T for T={T}")
    return T, Q1


def envelope_for_multiple(angle: Angle, n: int, ell: int) -> Envelope | None:
    """The envelope built from [ell]Q1, or None when that multiple is degenerate."""
    T, Q1 = generator_point(angle, n)
    P = scalar_mul(make_E_T(T), ell, Q1)
    point = et_to_ct(T, P)
    if point is None or point[0] == 0 or point[1] == 0:
        logger.debug("multiple %d lands on a pole for T=%s", ell, T)
        return None
    try:
        return envelope_from_triangle(angle, n, triangle_from_ct_point(T, point))
    except ConstructionError as e:
        logger.debug("multiple %d skipped: %s", ell, e)
        return None


def iter_envelopes(angle: Angle, n: int, workers: int = 1, batch_size: int | None = None):
    """
    Yields distinct envelopes for n from the multiples [1]Q1, [2]Q1, ... in order of the multiple.

    Multiples are evaluated in batches, in parallel when workers > 1.
    """
    generator_point(angle, n)
    batch_size = batch_size or max(4, 2 * workers)
    seen = set()
    for start in count_from(1, batch_size):
        multiples = range(start, start + batch_size)
        for envelope in run_ordered(partial(envelope_for_multiple, angle, n), multiples, workers):
            if envelope is not None and envelope not in seen:
                seen.add(envelope)
                yield envelope


def _take(iterator, limit: int, description: str, key=None) -> list:
    found, keys = [], set()
    for attempts, item in enumerate(iterator, start=1):
        marker = key(item) if key else item
        if marker not in keys:
            keys.add(marker)
            found.append(item)
            if len(found) == limit:
                return found
        if attempts >= 16 * limit + 64:
            break
    raise ConstructionError(f"only {len(found)} distinct {description} found, {limit} requested")


def generate_envelopes(angle: Angle, n: int, count: int, workers: int = 1) -> list[Envelope]:
    """
    count distinct verified envelopes for n, from the multiples of Q1 on E_T, T = 2n sqrt(r^2 - s^2).

    Raises:
        DomainError: for a non-Pythagorean angle or count < 1.
    """
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")
    envelopes = _take(iter_envelopes(angle, n, workers), count, "envelopes")
    logger.info("generated %d envelopes for θ=%s, n=%d", len(envelopes), angle, n)
    return envelopes


def infinitely_many_ratios(angle: Angle, n: int, count: int, workers: int = 1,
                           normalize: bool = False) -> list[Fraction]:
    """
    count distinct ratios m = d/b of envelopes for n.

    Args:
        normalize: Report max(m, 1/m), the ratio after reflecting to d >= b.
    """
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")

    def ratio_of(env):
        return ratio(normalize_ratio(env)) if normalize else ratio(env)

    envelopes = _take(iter_envelopes(angle, n, workers), count, "ratios", key=ratio_of)
    return [ratio_of(env) for env in envelopes]
