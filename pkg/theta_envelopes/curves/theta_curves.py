"""
Curve families attached to an angle θ and the torsion classification of the ratio curve.

Notation: for an Angle (r, s), t2 = r^2 - s^2. The ratio curve for m > 0 is
    G(m): Y^2 = X^3 + (r^2 m^2 + 2 s^2 m + r^2) X^2 + m^2 t2^2 X,
whose point (M0, r(m+1)M0), M0 = m*t2, always has order 4.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from theta_envelopes.core import Angle, Surd, is_square, sqrt_exact, to_rational
from theta_envelopes.curves.elliptic import (
    CubicCurve,
    CurvePoint,
    halve,
    on_curve,
    point_order,
    points_with_x,
    scalar_mul,
    two_torsion,
)
from theta_envelopes.errors import ConsistencyError, DomainError, PoleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuarticCurve:
    """The model z^2 = q4 x^4 + q3 x^3 + q2 x^2 + q1 x + q0."""
    q4: Fraction
    q3: Fraction
    q2: Fraction
    q1: Fraction
    q0: Fraction

    def __post_init__(self):
        for name in ("q4", "q3", "q2", "q1", "q0"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if not any(self.coefficients):
            raise DomainError("A quartic model needs at least one nonzero coefficient")

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.q4, self.q3, self.q2, self.q1, self.q0

    def evaluate(self, x) -> Fraction:
        value = Fraction(0)
        for coefficient in self.coefficients:
            value = value * x + coefficient
        return value

    def contains(self, x, z) -> bool:
        return to_rational(z) ** 2 == self.evaluate(to_rational(x))

    def __str__(self):
        return "z^2 = " + " + ".join(
            f"({c})x^{4 - i}" for i, c in enumerate(self.coefficients) if c != 0
        )


class TorsionTag(Enum):
    """Rational torsion subgroup of a ratio curve."""
    Z4 = "Z4"
    Z8 = "Z8"
    Z2xZ4 = "Z2xZ4"
    Z2xZ8 = "Z2xZ8"
    Z4_OR_Z2XZ4 = "Z4_or_Z2xZ4_unresolved"

    @property
    def invariants(self) -> tuple[int, ...] | None:
        return {
            TorsionTag.Z4: (4,),
            TorsionTag.Z8: (8,),
            TorsionTag.Z2xZ4: (2, 4),
            TorsionTag.Z2xZ8: (2, 8),
        }.get(self)

    @property
    def label(self) -> str:
        if self.invariants is None:
            return "Z/4Z or Z/2Z x Z/4Z"
        return " x ".join(f"Z/{k}Z" for k in self.invariants)


@dataclass(frozen=True)
class TorsionClass:
    tag: TorsionTag
    order_four: tuple[CurvePoint, ...]
    order_eight: tuple[CurvePoint, ...] = ()

    def __post_init__(self):
        if self.tag in (TorsionTag.Z8, TorsionTag.Z2xZ8) and not self.order_eight:
            raise ConsistencyError(f"{self.tag.label} needs a witnessed point of order 8")


@dataclass(frozen=True)
class MQuantities:
    """
    M0 = m*t2 and M1, M2 = r(m+1)(r(m+1) ± 2 sqrt(M0)).

    M1 and M2 are exact elements of Q(sqrt(M0)); when sqrt(M0) is irrational only
    their sum and product are rational, and sqrt_M1, sqrt_M2 are None.
    """
    M0: Fraction
    M1: Surd
    M2: Surd
    sqrt_M0: Fraction | None
    sqrt_M1: Fraction | None
    sqrt_M2: Fraction | None

    @property
    def m_sum(self) -> Fraction:
        return (self.M1 + self.M2).rational_value()

    @property
    def m_product(self) -> Fraction:
        return (self.M1 * self.M2).rational_value()


def _positive(value, name: str) -> Fraction:
    value = to_rational(value)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def _positive_integer(value, name: str) -> int:
    if not isinstance(value, int) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return value


def make_E_theta(angle: Angle, w) -> CubicCurve:
    """y^2 = x(x + (r+s)w)(x - (r-s)w)."""
    w = _positive(w, "w")
    return CubicCurve(2 * angle.s * w, -angle.t_squared * w * w).require_nonsingular("E_theta")


def make_F_theta(angle: Angle, N) -> CubicCurve:
    """v^2 = u(u - (r+s)N)(u + (r-s)N), the E_theta curve of the reflected angle."""
    N = _positive(N, "N")
    return CubicCurve(-2 * angle.s * N, -angle.t_squared * N * N).require_nonsingular("F_theta")


def make_G_quartic_w(angle: Angle, w, n: int) -> QuarticCurve:
    """
    z^2 = (x^2 + 2s(N+w)x - t2 w^2)^2 + 4 t2 N^2 x^2 with N = 2n - w.

    Raises:
        DomainError: unless 0 < w < 2n.
    """
    w = _positive(w, "w")
    n = _positive_integer(n, "n")
    if w >= 2 * n:
        raise DomainError(f"w must satisfy 0 < w < 2n = {2 * n}, got {w}")
    s, t2 = angle.s, angle.t_squared
    N = 2 * n - w
    linear = 2 * s * (N + w)
    constant = -t2 * w * w
    return QuarticCurve(
        1,
        2 * linear,
        linear * linear + 2 * constant + 4 * t2 * N * N,
        2 * linear * constant,
        constant * constant,
    )


def make_G_quartic_m(angle: Angle, m, n: int) -> QuarticCurve:
    """z^2 = x^4 + b1 x^3 + b2 x^2 + b3 x + b4, the w-form at w = 2n/(m+1)."""
    m = _positive(m, "m")
    n = _positive_integer(n, "n")
    r, s, t2 = angle.r, angle.s, angle.t_squared
    k = m + 1
    return QuarticCurve(
        1,
        8 * n * s,
        8 * n * n * (2 * m * m * r * r + 4 * s * s * m + 3 * s * s - r * r) / (k * k),
        -32 * n ** 3 * s * t2 / (k * k),
        16 * n ** 4 * t2 * t2 / k ** 4,
    )


def make_G_cubic(angle: Angle, m) -> CubicCurve:
    m = _positive(m, "m")
    r, s, t2 = angle.r, angle.s, angle.t_squared
    d2 = r * r * m * m + 2 * s * s * m + r * r
    d1 = m * m * t2 * t2
    return CubicCurve(d2, d1).require_nonsingular("ratio curve")


def independent_point(angle: Angle, m) -> CurvePoint:
    """(-t2 m^2, s t2 m^2 (m+1)); of order 2 when s = 0."""
    m = _positive(m, "m")
    t2 = angle.t_squared
    P = CurvePoint(-t2 * m * m, angle.s * t2 * m * m * (m + 1))
    if not on_curve(make_G_cubic(angle, m), P):
        raise ConsistencyError(f"independent point {P} is off the ratio curve for {angle}, m={m}")
    return P


def order_four_points(angle: Angle, m) -> list[CurvePoint]:
    """
    Rational points of order 4: (M0, ±r(m+1)M0) first, then under full 2-torsion the
    halves of the other points of order 2.
    """
    m = _positive(m, "m")
    E = make_G_cubic(angle, m)
    M0 = m * angle.t_squared
    base = [CurvePoint(M0, -angle.r * (m + 1) * M0), CurvePoint(M0, angle.r * (m + 1) * M0)]
    if scalar_mul(E, 2, base[1]) != CurvePoint(0, 0):
        raise ConsistencyError(f"({M0}, {base[1].y}) does not double to (0, 0) for {angle}, m={m}")
    others = []
    for T in two_torsion(E):
        for Q in halve(E, T):
            if Q not in base and Q not in others:
                others.append(Q)
    return base + sorted(others, key=lambda P: (P.x, P.y))


def m_quantities(angle: Angle, m) -> MQuantities:
    m = _positive(m, "m")
    M0 = m * angle.t_squared
    root_M0 = Surd.sqrt_of(M0)
    rm1 = angle.r * (m + 1)
    M1 = rm1 * (rm1 + 2 * root_M0)
    M2 = rm1 * (rm1 - 2 * root_M0)
    if M1.sign() <= 0 or M2.sign() <= 0:
        raise ConsistencyError(f"M-quantities must be positive, got M1={M1}, M2={M2}")
    return MQuantities(
        M0=M0,
        M1=M1,
        M2=M2,
        sqrt_M0=sqrt_exact(M0),
        sqrt_M1=sqrt_exact(M1.rat) if M1.is_rational else None,
        sqrt_M2=sqrt_exact(M2.rat) if M2.is_rational else None,
    )


def order_eight_points(angle: Angle, m, quantities: MQuantities | None = None) -> list[CurvePoint]:
    """
    Rational points of order 8, which exist iff sqrt(M0) and one of sqrt(M1), sqrt(M2) are rational.

    The X-coordinates are M0 + sg(r(m+1) ± sqrt(M_i)) sqrt(M0) with sg = +1 for M1 and -1 for M2;
    Y comes from the exact square root of the curve at X.
    """
    m = _positive(m, "m")
    quantities = quantities or m_quantities(angle, m)
    root_M0 = quantities.sqrt_M0
    if root_M0 is None:
        return []
    E = make_G_cubic(angle, m)
    rm1 = angle.r * (m + 1)
    points = []
    for sign, root in ((1, quantities.sqrt_M1), (-1, quantities.sqrt_M2)):
        if root is None:
            continue
        for inner in (1, -1):
            X = quantities.M0 + sign * (rm1 + inner * root) * root_M0
            for P in points_with_x(E, X):
                if P.y == 0 or P in points:
                    continue
                if point_order(E, P) != 8:
                    raise ConsistencyError(f"{P} on {E} should have order 8")
                points.append(P)
    return sorted(points, key=lambda P: (P.x, P.y))


def classify_torsion(angle: Angle, m, resolve: bool = True) -> TorsionClass:
    """
    Torsion subgroup of the ratio curve: order 8 appears iff an order-8 witness exists,
    the 2-part is full iff x^2 + d2 x + d1 has rational roots.

    Args:
        angle: The angle θ.
        m: The ratio, a positive rational.
        resolve: When False, Z/4Z and Z/2Z x Z/4Z are reported together, unresolved.

    Returns:
        The TorsionClass with its order-4 and order-8 witnesses.
    """
    m = _positive(m, "m")
    E = make_G_cubic(angle, m)
    quantities = m_quantities(angle, m)
    eights = order_eight_points(angle, m, quantities)
    full_two_torsion = len(two_torsion(E)) == 3
    if eights:
        tag = TorsionTag.Z2xZ8 if full_two_torsion else TorsionTag.Z8
    elif not resolve:
        tag = TorsionTag.Z4_OR_Z2XZ4
    else:
        tag = TorsionTag.Z2xZ4 if full_two_torsion else TorsionTag.Z4
    logger.debug("classified %s m=%s as %s", angle, m, tag.value)
    return TorsionClass(tag, tuple(order_four_points(angle, m)), tuple(eights))


@dataclass(frozen=True)
class E0Points:
    P0: CurvePoint
    P1: CurvePoint
    P2: CurvePoint
    Q: CurvePoint


def make_E0(angle: Angle) -> CubicCurve:
    """Y^2 = X^3 - 108 r^2 t2^2 (r^2 + 3s^2) X + 432 r^4 t2^3 (r^2 - 9s^2); singular when s = 0."""
    r, s, t2 = angle.r, angle.s, angle.t_squared
    return CubicCurve(
        0,
        -108 * r ** 2 * t2 ** 2 * (r * r + 3 * s * s),
        432 * r ** 4 * t2 ** 3 * (r * r - 9 * s * s),
    ).require_nonsingular("E0")


def e0_points(angle: Angle) -> E0Points:
    """
    The three points of order 2 and the point Q = (-3 t2 (r^2 + 3s^2), 27 t2^3) of infinite order.

    Raises:
        ConsistencyError: if any listed point is off E0 or has the wrong order.
    """
    E = make_E0(angle)
    r, s, t2 = angle.r, angle.s, angle.t_squared
    points = E0Points(
        P0=CurvePoint(-12 * r * r * t2, 0),
        P1=CurvePoint(6 * r * (r - 3 * s) * t2, 0),
        P2=CurvePoint(6 * r * (r + 3 * s) * t2, 0),
        Q=CurvePoint(-3 * t2 * (r * r + 3 * s * s), 27 * t2 ** 3),
    )
    for name in ("P0", "P1", "P2", "Q"):
        if not on_curve(E, getattr(points, name)):
            raise ConsistencyError(f"E0 point {name}={getattr(points, name)} is off {E}")
    for name in ("P0", "P1", "P2"):
        if point_order(E, getattr(points, name)) != 2:
            raise ConsistencyError(f"E0 point {name}={getattr(points, name)} should have order 2")
    if point_order(E, points.Q) is not None:
        raise ConsistencyError(f"E0 point Q={points.Q} should have infinite order")
    return points


def verify_FG(angle: Angle, m0) -> tuple[Fraction, Fraction, bool]:
    """
    Evaluates m1^2 = A(A + 2 m0 t2) and m2^2 = A(A - 2 m0 t2), A = r(m0^2 + t2).

    At m = m0^2/t2 these equal t2^2 M1 and t2^2 M2, so each is a rational square iff
    the corresponding sqrt(M_i) is rational.

    Returns:
        (m1_squared, m2_squared, both_rational_squares)
    """
    m0 = to_rational(m0)
    if m0 < 0:
        raise DomainError(f"m0 must be nonnegative, got {m0}")
    t2 = angle.t_squared
    A = angle.r * (m0 * m0 + t2)
    m1_squared = A * (A + 2 * m0 * t2)
    m2_squared = A * (A - 2 * m0 * t2)
    return m1_squared, m2_squared, is_square(m1_squared) and is_square(m2_squared)


def make_E_T(T) -> CubicCurve:
    """Y^2 = X^3 + 3T^2 X - T^2(T^2 - 1)."""
    T = _positive(T, "T")
    return CubicCurve(0, 3 * T * T, -T * T * (T * T - 1)).require_nonsingular("E_T")


def make_C_T(T) -> QuarticCurve:
    """y^2 = T^2 x^4 + T^2 x^3 - x - 1."""
    T = _positive(T, "T")
    return QuarticCurve(T * T, T * T, 0, -1, -1)


def phi(angle: Angle, m, X, Y) -> Fraction:
    """(Y + s(m+1)X) A1 A2, the numerator of the certifying expression."""
    m, X, Y = to_rational(m), to_rational(X), to_rational(Y)
    r, s = angle.r, angle.s
    A1 = X * X - (r - s) * (m * s - r) * X - (r - s) * Y
    A2 = X * X + (r + s) * (m * s + r) * X + (r + s) * Y
    return (Y + s * (m + 1) * X) * A1 * A2


def a_expression(angle: Angle, m, n: int, X, Y) -> Fraction:
    """
    2n phi(X, Y) / ((m+1) X (X + t2)).

    A point (X, Y) of the ratio curve yields an envelope for n with ratio m exactly
    when this value is a nonzero rational square.

    Raises:
        PoleError: at X = 0 or X = -t2.
    """
    m, X, Y = to_rational(m), to_rational(X), to_rational(Y)
    t2 = angle.t_squared
    if X == 0 or X == -t2:
        raise PoleError(f"the certifying expression has a pole at X={X} (X = 0 or X = -(r^2-s^2))")
    return 2 * n * phi(angle, m, X, Y) / ((m + 1) * X * (X + t2))


@dataclass(frozen=True)
class CThetaCurve:
    """
    The curve of triples (X, Y, Z): (X, Y) on the ratio curve and Z^2 = a_expression(X, Y).
    """
    angle: Angle
    m: Fraction
    n: int

    @property
    def cubic(self) -> CubicCurve:
        return make_G_cubic(self.angle, self.m)

    def residual(self, X, Y) -> Fraction:
        return a_expression(self.angle, self.m, self.n, X, Y)

    def contains(self, X, Y, Z) -> bool:
        X, Y, Z = to_rational(X), to_rational(Y), to_rational(Z)
        if Y == 0 or X == 0 or X == -self.angle.t_squared:
            return False
        if not on_curve(self.cubic, CurvePoint(X, Y)):
            return False
        return Z * Z == self.residual(X, Y)


def make_C_theta_mn(angle: Angle, m, n: int) -> tuple[CubicCurve, CThetaCurve]:
    m = _positive(m, "m")
    n = _positive_integer(n, "n")
    curve = CThetaCurve(angle, m, n)
    return curve.cubic, curve


def on_C_theta_mn(angle: Angle, m, n: int, X, Y, Z) -> bool:
    """Membership of (X, Y, Z); triples with Y = 0 are rejected."""
    return make_C_theta_mn(angle, m, n)[1].contains(X, Y, Z)
