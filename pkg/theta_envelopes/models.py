from dataclasses import dataclass
from fractions import Fraction

from theta_envelopes.core import Angle, to_rational
from theta_envelopes.errors import ConsistencyError, DomainError

EQUATION_NAMES = {
    1: "a^2 + b^2 - (2s/r)ab = c^2",
    2: "a^2 + d^2 + (2s/r)ad = e^2",
    3: "a(b + d) = rn",
}


@dataclass(frozen=True)
class Envelope:
    """
    Positive rationals (a, b, c, d, e) for an angle θ: two triangles with angles θ and π - θ
    sharing the side a.

    Construction only checks positivity so that candidate quintuples can be reported on;
    every constructor in the package calls require_valid() before returning.
    """
    angle: Angle
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e"):
            value = to_rational(getattr(self, name))
            if value <= 0:
                raise DomainError(f"envelope component {name} must be positive, got {value}")
            object.__setattr__(self, name, value)

    @property
    def quintuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.d, self.e

    @property
    def n_value(self) -> Fraction:
        """a(b + d)/r, the n this envelope certifies when it is an integer."""
        return self.a * (self.b + self.d) / self.angle.r

    @property
    def certified_n(self) -> int | None:
        value = self.n_value
        return value.numerator if value.denominator == 1 else None

    def equation_failures(self, n: int | None = None) -> list[int]:
        """Numbers (1, 2, 3) of the defining equations that fail; equation 3 needs n."""
        a, b, c, d, e = self.quintuple
        k = Fraction(2 * self.angle.s, self.angle.r)
        failures = []
        if a * a + b * b - k * a * b != c * c:
            failures.append(1)
        if a * a + d * d + k * a * d != e * e:
            failures.append(2)
        if n is not None and a * (b + d) != self.angle.r * n:
            failures.append(3)
        return failures

    def require_valid(self, n: int | None = None) -> "Envelope":
        failures = self.equation_failures(n)
        if failures:
            names = "; ".join(EQUATION_NAMES[i] for i in failures)
            raise ConsistencyError(f"envelope {self} fails {names}")
        return self

    def __str__(self):
        return f"θ{self.angle} (" + ", ".join(str(v) for v in self.quintuple) + ")"


@dataclass(frozen=True)
class Triangle:
    """
    A triangle with positive rational sides. With a context angle τ = (q, p) the first two
    sides enclose τ: first^2 + second^2 - (2p/q) first*second = third^2.
    """
    sides: tuple[Fraction, Fraction, Fraction]
    context_angle: Angle | None = None

    def __post_init__(self):
        sides = tuple(to_rational(side) for side in self.sides)
        if len(sides) != 3 or any(side <= 0 for side in sides):
            raise DomainError(f"a triangle needs three positive sides, got {self.sides}")
        first, second, third = sides
        if not (first < second + third and second < first + third and third < first + second):
            raise DomainError(f"sides {sides} violate the triangle inequality")
        if self.context_angle is not None:
            cosine = self.context_angle.cosine
            if first ** 2 + second ** 2 - 2 * cosine * first * second != third ** 2:
                raise DomainError(f"sides {sides} do not enclose the angle with cosine {cosine}")
        object.__setattr__(self, "sides", sides)

    @property
    def heron16(self) -> Fraction:
        """16 * area^2 by Heron's formula."""
        a, b, c = self.sides
        return (a + b + c) * (a + b - c) * (b + c - a) * (c + a - b)

    @property
    def area_squared(self) -> Fraction:
        return self.heron16 / 16

    def scaled(self, k) -> "Triangle":
        k = to_rational(k)
        return Triangle(tuple(k * side for side in self.sides), self.context_angle)
