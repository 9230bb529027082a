"""
Exact arithmetic on Weierstrass cubics y^2 = x^3 + a2*x^2 + a4*x + a6 over Q.

Points carry no reference to their curve; every operation takes the curve explicitly,
because the same coordinates are moved between members of a curve family.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, QQ, Symbol
from sympy import Rational as SympyRational

from theta_envelopes.core import sqrt_exact, to_rational
from theta_envelopes.errors import DomainError, SingularCurveError

logger = logging.getLogger(__name__)

# Mazur: the order of a rational torsion point is at most 12.
MAZUR_BOUND = 12

_X = Symbol("x")


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (x, y), or the point at infinity when both coordinates are None."""
    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise DomainError("A curve point needs both coordinates or neither (infinity)")
        if self.x is not None:
            object.__setattr__(self, "x", to_rational(self.x))
            object.__setattr__(self, "y", to_rational(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "∞" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CubicCurve:
    """
    The model y^2 = x^3 + a2*x^2 + a4*x + a6.

    Construction does not reject singular models so that their discriminant can be
    inspected; the family factories call require_nonsingular().
    """
    a2: Fraction
    a4: Fraction
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    def rhs(self, x: Fraction) -> Fraction:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    @property
    def is_singular(self) -> bool:
        return discriminant(self) == 0

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in (self.a2, self.a4, self.a6))

    def require_nonsingular(self, label: str = "curve") -> "CubicCurve":
        if self.is_singular:
            raise SingularCurveError(f"{label} {self} is singular (discriminant 0)")
        return self

    def __str__(self):
        terms = ["y^2 = x^3"]
        for coefficient, monomial in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if coefficient == 0:
                continue
            sign = "+" if coefficient > 0 else "-"
            terms.append(f"{sign} {abs(coefficient)}{monomial}")
        return " ".join(terms)


def on_curve(E: CubicCurve, P: CurvePoint) -> bool:
    """True iff P is infinity or satisfies E exactly."""
    return P.is_infinity or P.y * P.y == E.rhs(P.x)


def _require_on_curve(E: CubicCurve, *points: CurvePoint):
    for P in points:
        if not on_curve(E, P):
            raise DomainError(f"Point {P} is not on {E}")


def negate(E: CubicCurve, P: CurvePoint) -> CurvePoint:
    _require_on_curve(E, P)
    return P if P.is_infinity else CurvePoint(P.x, -P.y)


def _add(E: CubicCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        slope = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - E.a2 - P.x - Q.x
    return CurvePoint(x3, slope * (P.x - x3) - P.y)


def add(E: CubicCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """
    Chord-tangent sum of two points on E.

    Raises:
        DomainError: if either point is off the curve.
    """
    _require_on_curve(E, P, Q)
    return _add(E, P, Q)


def double(E: CubicCurve, P: CurvePoint) -> CurvePoint:
    return add(E, P, P)


def duplication_x(E: CubicCurve, x: Fraction) -> Fraction | None:
    """
    x([2]P) from x(P) alone; None when P has order 2.

    For a6 = 0 this is (x^2 - a4)^2 / (4 y^2).
    """
    x = to_rational(x)
    denominator = 4 * E.rhs(x)
    if denominator == 0:
        return None
    numerator = x ** 4 - 2 * E.a4 * x * x - 8 * E.a6 * x + E.a4 * E.a4 - 4 * E.a2 * E.a6
    return numerator / denominator


def scalar_mul(E: CubicCurve, k: int, P: CurvePoint) -> CurvePoint:
    """[k]P by double-and-add; negative k multiplies -P."""
    _require_on_curve(E, P)
    if k < 0:
        k, P = -k, CurvePoint(P.x, -P.y) if not P.is_infinity else P
    result, addend = INFINITY, P
    while k:
        if k & 1:
            result = _add(E, result, addend)
        addend = _add(E, addend, addend)
        k >>= 1
    return result


def point_order(E: CubicCurve, P: CurvePoint, limit: int = MAZUR_BOUND) -> int | None:
    """
    Smallest k <= limit with [k]P = infinity, or None when P has infinite order.

    Over Q a torsion point has order at most 12, so the default limit is conclusive.
    """
    _require_on_curve(E, P)
    multiple = P
    for k in range(1, limit + 1):
        if multiple.is_infinity:
            return k
        multiple = _add(E, multiple, P)
    return None


def b_invariants(E: CubicCurve) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    b2 = 4 * E.a2
    b4 = 2 * E.a4
    b6 = 4 * E.a6
    b8 = 4 * E.a2 * E.a6 - E.a4 * E.a4
    return b2, b4, b6, b8


def discriminant(E: CubicCurve) -> Fraction:
    b2, b4, b6, b8 = b_invariants(E)
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def j_invariant(E: CubicCurve) -> Fraction:
    """
    Raises:
        SingularCurveError: if the discriminant is zero.
    """
    delta = discriminant(E)
    if delta == 0:
        raise SingularCurveError(f"j-invariant of {E} is undefined: discriminant is 0")
    b2, b4, _, _ = b_invariants(E)
    c4 = b2 * b2 - 24 * b4
    return c4 ** 3 / delta


def rational_roots(coefficients) -> list[Fraction]:
    """
    Distinct rational roots of a polynomial given by coefficients, highest degree first.
    """
    coefficients = [to_rational(c) for c in coefficients]
    while coefficients and coefficients[0] == 0:
        coefficients.pop(0)
    if len(coefficients) < 2:
        return []
    poly = Poly.from_list([SympyRational(c.numerator, c.denominator) for c in coefficients], _X, domain=QQ)
    roots = [Fraction(int(root.p), int(root.q)) for root in poly.ground_roots()]
    return sorted(roots)


def two_torsion(E: CubicCurve) -> list[CurvePoint]:
    """All rational points with y = 0, sorted by x."""
    return [CurvePoint(x, Fraction(0)) for x in rational_roots([1, E.a2, E.a4, E.a6])]


def points_with_x(E: CubicCurve, x: Fraction) -> list[CurvePoint]:
    """Rational points of E above x, negative y first; empty when none exist."""
    value = E.rhs(x)
    if value < 0:
        return []
    y = sqrt_exact(value)
    if y is None:
        return []
    return [CurvePoint(x, y)] if y == 0 else [CurvePoint(x, -y), CurvePoint(x, y)]


def halve(E: CubicCurve, P: CurvePoint) -> list[CurvePoint]:
    """
    All rational Q with [2]Q = P.

    The candidates are the rational roots of the duplication quartic
    x^4 - 2*a4*x^2 - 8*a6*x + a4^2 - 4*a2*a6 = 4*x(P)*(x^3 + a2*x^2 + a4*x + a6).
    """
    _require_on_curve(E, P)
    if P.is_infinity:
        return [INFINITY] + two_torsion(E)
    x0 = P.x
    quartic = [
        1,
        -4 * x0,
        -2 * E.a4 - 4 * x0 * E.a2,
        -8 * E.a6 - 4 * x0 * E.a4,
        E.a4 * E.a4 - 4 * E.a2 * E.a6 - 4 * x0 * E.a6,
    ]
    halves = []
    for x in rational_roots(quartic):
        for Q in points_with_x(E, x):
            if _add(E, Q, Q) == P:
                halves.append(Q)
    return halves


def three_torsion(E: CubicCurve) -> list[CurvePoint]:
    """Rational points of order 3, from the rational roots of the 3-division polynomial."""
    psi3 = [3, 4 * E.a2, 6 * E.a4, 12 * E.a6, 4 * E.a2 * E.a6 - E.a4 * E.a4]
    points = []
    for x in rational_roots(psi3):
        points.extend(Q for Q in points_with_x(E, x) if Q.y != 0)
    return points


def torsion_points(E: CubicCurve) -> list[CurvePoint]:
    """
    The rational torsion subgroup, built from its 2-primary part (iterated exact halving)
    and its 3-torsion.

    Complete for every curve with a rational point of order 4, where Mazur leaves only
    2-power and 3-torsion; curves in general may also carry 5-, 7- or 9-torsion.
    """
    E.require_nonsingular()
    two_primary = {INFINITY}
    frontier = [INFINITY]
    while frontier:
        discovered = []
        for P in frontier:
            for Q in halve(E, P):
                if Q not in two_primary:
                    two_primary.add(Q)
                    discovered.append(Q)
        frontier = discovered
    three_part = [INFINITY] + three_torsion(E)
    group = {_add(E, P, Q) for P in two_primary for Q in three_part}
    logger.debug("torsion of %s has %d points", E, len(group))
    return sorted(group, key=lambda P: (not P.is_infinity, P.x or 0, P.y or 0))


def torsion_invariants(E: CubicCurve) -> tuple[int, ...]:
    """
    Invariant factors of the torsion subgroup: (n,) for Z/n, (2, n) for Z/2 x Z/n.
    """
    size = len(torsion_points(E))
    if len(two_torsion(E)) == 3:
        return (2, size // 2)
    return (size,)
