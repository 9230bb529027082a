"""
Birational maps and correspondences between the curve models and envelopes.

Conventions (t2 = r^2 - s^2, k = m + 1):
  * the ratio curve G(m) in (X, Y) and the quartic z^2 = x^4 + b1 x^3 + ... in (x, z)
    are related by cubic_to_quartic / quartic_to_cubic, mutually inverse;
  * a system solution (u, v, w, x, y) for n corresponds to an envelope for n;
  * C_T: y^2 = T^2 x^4 + T^2 x^3 - x - 1 and E_T are related by ct_to_et / et_to_ct.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from theta_envelopes.core import Angle, sqrt_exact, squarefree_part, to_rational
from theta_envelopes.curves.elliptic import INFINITY, CurvePoint, add, negate, on_curve, point_order
from theta_envelopes.curves.theta_curves import (
    a_expression,
    independent_point,
    make_C_T,
    make_E_T,
    make_E_theta,
    make_F_theta,
    make_G_cubic,
    make_G_quartic_m,
)
from theta_envelopes.errors import CertificationError, ConsistencyError, DomainError, PoleError
from theta_envelopes.models import Envelope, Triangle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemSolution:
    """
    (x, y) on E_theta^w, (u, v) on F_theta^N with N = 2n - w, and x v = u y.
    """
    u: Fraction
    v: Fraction
    w: Fraction
    x: Fraction
    y: Fraction
    n: int

    def __post_init__(self):
        for name in ("u", "v", "w", "x", "y"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @property
    def N(self) -> Fraction:
        return 2 * self.n - self.w

    def violations(self, angle: Angle) -> list[str]:
        problems = []
        if not 0 < self.w < 2 * self.n:
            return [f"w={self.w} outside (0, 2n)"]
        if self.y * self.v == 0:
            return ["y*v = 0"]
        if not on_curve(make_E_theta(angle, self.w), CurvePoint(self.x, self.y)):
            problems.append("(x, y) not on E_theta^w")
        if not on_curve(make_F_theta(angle, self.N), CurvePoint(self.u, self.v)):
            problems.append("(u, v) not on F_theta^N")
        if self.x * self.v != self.u * self.y:
            problems.append("x*v != u*y")
        return problems

    def check(self, angle: Angle) -> "SystemSolution":
        problems = self.violations(angle)
        if problems:
            raise DomainError(f"invalid system solution {self}: {'; '.join(problems)}")
        return self


def _quartic_infinity_ordinate(angle: Angle, m: Fraction, n: int) -> Fraction:
    return 4 * n * n * angle.t_squared / (m + 1) ** 2


def cubic_to_quartic(angle: Angle, m, n: int, P: CurvePoint) -> tuple[Fraction, Fraction]:
    """
    Sends (X, Y) on the ratio curve to (x, z) on the quartic for n.

    Infinity goes to (0, 4n^2 t2/(m+1)^2).

    Raises:
        PoleError: at X = 0 or X = -t2.
        DomainError: if P is not on the ratio curve.
    """
    m = to_rational(m)
    G = make_G_cubic(angle, m)
    if not on_curve(G, P):
        raise DomainError(f"{P} is not on {G}")
    if P.is_infinity:
        return Fraction(0), _quartic_infinity_ordinate(angle, m, n)
    s, t2 = angle.s, angle.t_squared
    X, Y = P.x, P.y
    if X == 0 or X == -t2:
        raise PoleError(f"cubic_to_quartic is undefined at X={X} (X = 0 or X = -(r^2-s^2))")
    k = m + 1
    x = -2 * n * t2 * (Y + s * k * X) / (k * X * (X + t2))
    cubic_part = X ** 3 + (2 * G.a2 - t2) * X * X + (3 * G.a4 + 2 * s * k * Y) * X + t2 * G.a4
    z = 4 * n * n * t2 * cubic_part / (k * k * X * (X + t2) ** 2)
    if not make_G_quartic_m(angle, m, n).contains(x, z):
        raise ConsistencyError(f"image ({x}, {z}) of {P} is off the quartic")
    return x, z


def quartic_to_cubic(angle: Angle, m, n: int, point: tuple) -> CurvePoint:
    """
    Inverse of cubic_to_quartic.

    The closed form below lands on P - Pi, Pi the independent point, so Pi is added back.
    (0, 4n^2 t2/(m+1)^2) maps to infinity and (0, -4n^2 t2/(m+1)^2) to Pi.
    """
    m = to_rational(m)
    x, z = (to_rational(c) for c in point)
    if not make_G_quartic_m(angle, m, n).contains(x, z):
        raise DomainError(f"({x}, {z}) is not on the quartic for {angle}, m={m}, n={n}")
    Pi = independent_point(angle, m)
    if x == 0:
        return INFINITY if z == _quartic_infinity_ordinate(angle, m, n) else Pi
    G = make_G_cubic(angle, m)
    s, t2 = angle.s, angle.t_squared
    k = m + 1
    k2 = k * k
    X = -t2 * (k2 * x * x + 4 * s * n * k2 * x + k2 * z - 4 * n * n * t2) / (2 * k2 * x * x)
    c0 = -2 * n * t2 * (k2 * z - 4 * n * n * t2)
    c1 = s * k2 * (k2 * z - 12 * n * n * t2)
    c2 = 2 * n * k2 * (2 * G.a2 - 3 * t2)
    Y = t2 * (s * k2 * k2 * x ** 3 + c2 * x * x + c1 * x + c0) / (2 * k2 * k * x ** 3)
    shifted = CurvePoint(X, Y)
    if not on_curve(G, shifted):
        raise ConsistencyError(f"({x}, {z}) maps off the ratio curve to {shifted}")
    return add(G, shifted, Pi)


def solve_u(angle: Angle, w, N, x, z) -> tuple[Fraction, Fraction]:
    """
    Roots of x u^2 - B u - t2 N^2 x = 0, B = x^2 + 2xs(N+w) - t2 w^2, as (B + z)/2x and (B - z)/2x.

    Raises:
        DomainError: if x = 0 or z^2 != B^2 + 4 t2 N^2 x^2.
    """
    w, N, x, z = (to_rational(v) for v in (w, N, x, z))
    if x == 0:
        raise DomainError("solve_u needs x != 0")
    t2 = angle.t_squared
    B = x * x + 2 * x * angle.s * (N + w) - t2 * w * w
    if z * z != B * B + 4 * t2 * N * N * x * x:
        raise DomainError(f"z={z} is not an ordinate of the quartic at x={x}")
    return (B + z) / (2 * x), (B - z) / (2 * x)


def solution_to_envelope(angle: Angle, n: int, sol: SystemSolution) -> Envelope:
    """
    a = |y/2x|, b = |rwx/y|, c = |(x^2 + t2 w^2)/2y|, d = |rNu/v|, e = |(u^2 + t2 N^2)/2v|.
    """
    if sol.n != n:
        raise DomainError(f"solution is for n={sol.n}, not n={n}")
    sol.check(angle)
    r, t2 = angle.r, angle.t_squared
    u, v, w, x, y, N = sol.u, sol.v, sol.w, sol.x, sol.y, sol.N
    if abs(y / (2 * x)) != abs(v / (2 * u)):
        raise ConsistencyError("|y/2x| != |v/2u| although x v = u y")
    envelope = Envelope(
        angle,
        abs(y / (2 * x)),
        abs(r * w * x / y),
        abs((x * x + t2 * w * w) / (2 * y)),
        abs(r * N * u / v),
        abs((u * u + t2 * N * N) / (2 * v)),
    )
    return envelope.require_valid(n)


def envelope_to_solution(angle: Angle, env: Envelope) -> SystemSolution:
    """
    x = 2a(a + c - kb), y = 2a x, w = 2ab/r, u = 2a(a + e + kd), v = 2a u with k = s/r.

    Raises:
        DomainError: if the envelope does not verify for an integer n = a(b+d)/r.
    """
    if env.angle != angle:
        raise DomainError(f"envelope angle {env.angle} differs from {angle}")
    n = env.certified_n
    if n is None or env.equation_failures(n):
        raise DomainError(f"{env} is not a verified envelope for an integer n")
    a, b, c, d, e = env.quintuple
    k = angle.cosine
    x = 2 * a * (a + c - k * b)
    u = 2 * a * (a + e + k * d)
    solution = SystemSolution(u=u, v=2 * a * u, w=2 * a * b / angle.r, x=x, y=2 * a * x, n=n)
    return solution.check(angle)


def solution_quartic_point(angle: Angle, sol: SystemSolution) -> tuple[Fraction, Fraction]:
    """(x, z) on the quartic for sol, with z = 2xu - B so that u = (B + z)/2x."""
    t2 = angle.t_squared
    B = sol.x ** 2 + 2 * sol.x * angle.s * (sol.N + sol.w) - t2 * sol.w ** 2
    return sol.x, 2 * sol.x * sol.u - B


def envelope_point(angle: Angle, env: Envelope) -> tuple[CurvePoint, Fraction]:
    """
    Recovers the point (X, Y) on the ratio curve for m = d/b and the Z with
    Z^2 = a_expression(X, Y), so that (X, Y, Z) lies on the membership curve for (m, n).
    """
    sol = envelope_to_solution(angle, env)
    m = env.d / env.b
    P = quartic_to_cubic(angle, m, sol.n, solution_quartic_point(angle, sol))
    if P.is_infinity or P.x in (0, -angle.t_squared):
        raise PoleError(f"{env} corresponds to an excluded point {P}")
    Z = (m + 1) * P.x * (P.x + angle.t_squared) * sol.y / (2 * sol.n * angle.t_squared)
    return P, Z


def ct_to_et(T, point: tuple) -> CurvePoint:
    """
    X = (T^2 x - 1)/(x + 1), Y = (T^2 + 1) y/(x + 1)^2; (-1, 0) goes to infinity.
    """
    T = to_rational(T)
    x, y = (to_rational(c) for c in point)
    if not make_C_T(T).contains(x, y):
        raise DomainError(f"({x}, {y}) is not on C_T for T={T}")
    if x == -1:
        return INFINITY
    T2 = T * T
    return CurvePoint((T2 * x - 1) / (x + 1), (T2 + 1) * y / (x + 1) ** 2)


def et_to_ct(T, P: CurvePoint) -> tuple[Fraction, Fraction] | None:
    """
    x = (X + 1)/(T^2 - X), y = (T^2 + 1) Y/(T^2 - X)^2; infinity goes to (-1, 0).

    Returns None for (T^2, ±T(T^2 + 1)), which correspond to the points at infinity of C_T.
    """
    T = to_rational(T)
    E = make_E_T(T)
    if not on_curve(E, P):
        raise DomainError(f"{P} is not on {E}")
    if P.is_infinity:
        return Fraction(-1), Fraction(0)
    T2 = T * T
    if P.x == T2:
        return None
    return (P.x + 1) / (T2 - P.x), (T2 + 1) * P.y / (T2 - P.x) ** 2


def triangle_from_ct_point(T, point: tuple) -> Triangle:
    """
    (c, e, f) = |y/x|, |(T^2 x^2 + 1)/y|, |(T^2 x^4 + 1)/(xy)|, a triangle of area T.

    Raises:
        DomainError: if x or y is zero, or the point is off C_T.
    """
    T = to_rational(T)
    x, y = (to_rational(c) for c in point)
    if x == 0 or y == 0:
        raise DomainError(f"triangle_from_ct_point needs x*y != 0, got ({x}, {y})")
    if not make_C_T(T).contains(x, y):
        raise DomainError(f"({x}, {y}) is not on C_T for T={T}")
    T2 = T * T
    return Triangle((abs(y / x), abs((T2 * x * x + 1) / y), abs((T2 * x ** 4 + 1) / (x * y))))


def certified_n(angle: Angle, m, P: CurvePoint) -> tuple[int, Envelope]:
    """
    The squarefree n certified by a non-torsion point of the ratio curve, with its envelope.

    The sign of Y is chosen so that the certifying expression is positive; n is then its
    squarefree part, the smallest n making it a rational square. Envelopes for n k^2
    follow by scaling.

    Raises:
        CertificationError: for torsion points, or when neither sign is positive.
        PoleError: at X = 0 or X = -t2.
    """
    m = to_rational(m)
    G = make_G_cubic(angle, m)
    if not on_curve(G, P):
        raise DomainError(f"{P} is not on {G}")
    if P.is_infinity or point_order(G, P) is not None:
        raise CertificationError(f"{P} is a torsion point of {G}; torsion certifies nothing")
    if P.x == 0 or P.x == -angle.t_squared:
        raise PoleError(f"certified_n is undefined at X={P.x}")
    for candidate in (P, negate(G, P)):
        value = a_expression(angle, m, 1, candidate.x, candidate.y)
        if value <= 0:
            continue
        n = squarefree_part(value)
        logger.debug("point %s certifies n=%d (expression %s)", candidate, n, value)
        return n, _envelope_from_ratio_point(angle, m, n, candidate)
    raise CertificationError(f"neither sign of {P} makes the certifying expression positive")


def _envelope_from_ratio_point(angle: Angle, m: Fraction, n: int, P: CurvePoint) -> Envelope:
    r, s = angle.r, angle.s
    x, z = cubic_to_quartic(angle, m, n, P)
    w = 2 * Fraction(n) / (m + 1)
    N = 2 * n - w
    y = sqrt_exact(x * (x + (r + s) * w) * (x - (r - s) * w)) if x != 0 else None
    if not y:
        raise ConsistencyError(f"no rational y over x={x} on E_theta^w for {P}")
    for u in solve_u(angle, w, N, x, z):
        if u == 0:
            continue
        envelope = solution_to_envelope(angle, n, SystemSolution(u=u, v=u * y / x, w=w, x=x, y=y, n=n))
        if envelope.d == m * envelope.b:
            return envelope
    raise ConsistencyError(f"no root of the u-quadratic gives ratio {m} for {P}")
