"""
Exact scalar layer: rationals, angles with rational cosine, square roots and square classes.

Every scalar in the package is a fractions.Fraction, which is canonical after
every operation (reduced, positive denominator), so equality is structural.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint, integer_nthroot

from theta_envelopes.errors import DomainError

logger = logging.getLogger(__name__)

Rational = Fraction

_RATIONAL_TEXT = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def to_rational(value) -> Fraction:
    """Coerces an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"Expected an exact rational, got {value!r} ({type(value).__name__})")


def parse_rational(text: str) -> Fraction:
    """
    Parses an exact rational written as "p/q" or "p".

    Decimal and exponent notation are rejected so that no value is ever rounded.

    Raises:
        DomainError: if the text is not an exact rational or the denominator is zero.
    """
    if not _RATIONAL_TEXT.match(text):
        raise DomainError(f"'{text}' is not an exact rational of the form p/q")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise DomainError(f"'{text}' has a zero denominator") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def sqrt_exact(q) -> Fraction | None:
    """
    Returns the nonnegative rational square root of q, or None when q is not a rational square.

    Args:
        q: A nonnegative rational (int or Fraction).

    Raises:
        DomainError: if q is negative.
    """
    q = to_rational(q)
    if q < 0:
        raise DomainError(f"sqrt_exact needs q >= 0, got {q}")
    num_root, num_exact = integer_nthroot(q.numerator, 2)
    if not num_exact:
        return None
    den_root, den_exact = integer_nthroot(q.denominator, 2)
    if not den_exact:
        return None
    return Fraction(int(num_root), int(den_root))


def is_square(q) -> bool:
    q = to_rational(q)
    return q >= 0 and sqrt_exact(q) is not None


def squarefree_part(q) -> int:
    """
    The squarefree positive integer u with |q| = u * (rational square).

    Numerator and denominator are factored separately; a prime contributes to u
    when its exponent in numerator*denominator is odd.

    Raises:
        DomainError: if q is zero.
    """
    q = to_rational(q)
    if q == 0:
        raise DomainError("squarefree_part is undefined at 0")
    part = 1
    for value in (abs(q.numerator), q.denominator):
        for prime, exponent in factorint(value).items():
            if exponent % 2:
                part *= int(prime)
    return part


def square_class(q) -> tuple[int, int]:
    """Returns (sign, squarefree_part(q)): the class of q in Q*/(Q*)^2."""
    q = to_rational(q)
    return (1 if q > 0 else -1), squarefree_part(q)


@dataclass(frozen=True)
class Angle:
    """
    An angle θ with cos θ = s/r, 0 <= |s| < r and gcd(r, s) = 1.

    t is set iff r^2 - s^2 is a perfect square, i.e. the sine is rational too.
    The same type stores the angle τ of a τ-triangle, with (q, p) in place of (r, s).
    """
    r: int
    s: int
    t: int | None = field(init=False, default=None)

    def __post_init__(self):
        if not isinstance(self.r, int) or not isinstance(self.s, int):
            raise DomainError(f"Angle needs integers r and s, got r={self.r!r}, s={self.s!r}")
        if self.r < 1:
            raise DomainError(f"Angle needs r >= 1, got r={self.r}")
        if abs(self.s) >= self.r:
            raise DomainError(f"Angle needs |s| < r, got r={self.r}, s={self.s}")
        if gcd(self.r, self.s) != 1:
            raise DomainError(f"Angle needs gcd(r, s) = 1, got r={self.r}, s={self.s}")
        root, exact = integer_nthroot(self.r * self.r - self.s * self.s, 2)
        object.__setattr__(self, "t", int(root) if exact else None)

    @property
    def t_squared(self) -> int:
        """r^2 - s^2, always positive."""
        return self.r * self.r - self.s * self.s

    @property
    def is_pythagorean(self) -> bool:
        return self.t is not None

    @property
    def cosine(self) -> Fraction:
        return Fraction(self.s, self.r)

    def reflect(self) -> "Angle":
        """The angle π - θ."""
        return Angle(self.r, -self.s)

    def __str__(self):
        return f"({self.r},{self.s})"


def make_angle(r: int, s: int) -> Angle:
    """
    Builds an Angle, populating t when the angle is Pythagorean.

    Raises:
        DomainError: naming the failed constraint (r >= 1, |s| < r, gcd(r, s) = 1).
    """
    angle = Angle(r, s)
    logger.debug("angle %s pythagorean=%s", angle, angle.is_pythagorean)
    return angle


@dataclass(frozen=True)
class Surd:
    """
    The real number rat + coef * sqrt(radicand), radicand a squarefree positive integer.

    Used for the M-quantities, which live in Q(sqrt(M0)) when sqrt(M0) is irrational.
    A rational value is stored with coef = 0 and radicand = 1.
    """
    rat: Fraction
    coef: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        rat, coef, radicand = to_rational(self.rat), to_rational(self.coef), self.radicand
        if not isinstance(radicand, int) or radicand < 1:
            raise DomainError(f"Surd radicand must be a positive integer, got {radicand!r}")
        core = squarefree_part(radicand)
        coef *= sqrt_exact(Fraction(radicand, core))
        radicand = core
        if radicand == 1:
            rat, coef = rat + coef, Fraction(0)
        if coef == 0:
            radicand = 1
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def sqrt_of(cls, q) -> "Surd":
        """sqrt(q) for a nonnegative rational q, kept exact."""
        q = to_rational(q)
        if q < 0:
            raise DomainError(f"Surd.sqrt_of needs q >= 0, got {q}")
        if q == 0:
            return cls(Fraction(0))
        core = squarefree_part(q)
        return cls(Fraction(0), sqrt_exact(q / core), core)

    @property
    def is_rational(self) -> bool:
        return self.coef == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.rat

    def conjugate(self) -> "Surd":
        return Surd(self.rat, -self.coef, self.radicand)

    def _lift(self, other) -> "Surd":
        if isinstance(other, Surd):
            if not (self.is_rational or other.is_rational or self.radicand == other.radicand):
                raise DomainError(f"Cannot combine surds over sqrt({self.radicand}) and sqrt({other.radicand})")
            return other
        return Surd(to_rational(other))

    def __add__(self, other) -> "Surd":
        other = self._lift(other)
        radicand = self.radicand if not self.is_rational else other.radicand
        return Surd(self.rat + other.rat, self.coef + other.coef, radicand)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.rat, -self.coef, self.radicand)

    def __sub__(self, other) -> "Surd":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Surd":
        return (-self) + other

    def __mul__(self, other) -> "Surd":
        other = self._lift(other)
        radicand = self.radicand if not self.is_rational else other.radicand
        return Surd(
            self.rat * other.rat + self.coef * other.coef * radicand,
            self.rat * other.coef + self.coef * other.rat,
            radicand,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign of the real value (-1, 0 or 1)."""
        a, b = self.rat, self.coef
        sign_a, sign_b = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sign_b == 0:
            return sign_a
        if sign_a == 0 or sign_a == sign_b:
            return sign_b
        # opposite signs: the larger of a^2 and b^2 * radicand wins
        dominant = a * a - b * b * self.radicand
        if dominant == 0:
            return 0
        return sign_a if dominant > 0 else sign_b

    def __str__(self):
        if self.is_rational:
            return str(self.rat)
        magnitude = abs(self.coef)
        root = f"√{self.radicand}" if magnitude == 1 else f"{magnitude}√{self.radicand}"
        if self.rat == 0:
            return root if self.coef > 0 else f"-{root}"
        return f"{self.rat} {'+' if self.coef > 0 else '-'} {root}"
