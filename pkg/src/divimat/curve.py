"""Short Weierstrass curves y² = x³ + a·x + b and exact rational-point arithmetic.

Coefficients are either both integers (a numeric curve, which must be
nonsingular) or both variable names (a symbolic curve over ℤ[A, B], used for
polynomial identities).  Point arithmetic is the chord-tangent group law over
`fractions.Fraction`: no approximation at any step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import PointAtInfinityError, SingularCurveError


@dataclass(frozen=True)
class Curve:
    """y² = x³ + a·x + b with integer or symbolic coefficients."""

    a: int | str
    b: int | str

    def __post_init__(self):
        if self.is_numeric() and self.discriminant() == 0:
            raise SingularCurveError(
                f"curve y^2 = x^3 + {self.a}x + {self.b} is singular (discriminant 0)"
            )

    @classmethod
    def symbolic(cls, a: str = "A", b: str = "B") -> "Curve":
        return cls(a, b)

    def is_numeric(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    def discriminant(self) -> int:
        if not self.is_numeric():
            raise ValueError("symbolic curve has no numeric discriminant")
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def contains(self, x: Fraction, y: Fraction) -> bool:
        if not self.is_numeric():
            raise ValueError("membership test needs a numeric curve")
        return y * y == x**3 + self.a * x + self.b


@dataclass(frozen=True)
class RatPoint:
    """Exact rational point on a numeric curve, with x = a/b² in lowest terms."""

    curve: Curve
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if not self.curve.is_numeric():
            raise ValueError("rational points live on numeric curves")
        if not self.curve.contains(self.x, self.y):
            raise ValueError(f"({self.x}, {self.y}) is not on y^2 = x^3 + {self.curve.a}x + {self.curve.b}")
        self.square_denominator_split()  # fail fast if the denominator is not a square

    def square_denominator_split(self) -> tuple[int, int]:
        """(a, b) with x = a/b², gcd(a, b) = 1, b ≥ 1.

        For points generated by the group law on an integral model the
        denominator of x is always a perfect square.
        """
        num, den = self.x.numerator, self.x.denominator
        b = isqrt(den)
        if b * b != den:
            raise ValueError(f"denominator of x = {self.x} is not a perfect square")
        if gcd(num, b) != 1:
            raise ValueError(f"x = {self.x} does not reduce to coprime a/b^2")
        return num, b


@dataclass(frozen=True)
class MultipleRecord:
    """The exact n-th multiple of a point: x(nP) = a/b² in lowest terms."""

    n: int
    x: Fraction
    y: Fraction
    a: int
    b: int


# The group identity is represented internally as None in (x, y) pair form.
_Affine = tuple[Fraction, Fraction]


def _add(curve: Curve, p: _Affine | None, q: _Affine | None) -> _Affine | None:
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if y1 == -y2:
            return None
        slope = (3 * x1 * x1 + curve.a) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - x1 - x2
    y3 = slope * (x1 - x3) - y1
    return (x3, y3)


def point_mul(n: int, point: RatPoint) -> MultipleRecord:
    """Exact nP by chord-tangent arithmetic; n ≥ 1.

    Raises PointAtInfinityError if any multiple up to n is the identity
    (the point is torsion of order ≤ n).
    """
    if n < 1:
        raise ValueError("multiplier must be a positive integer")
    curve = point.curve
    acc: _Affine | None = (point.x, point.y)
    base = (point.x, point.y)
    for _ in range(n - 1):
        acc = _add(curve, acc, base)
        if acc is None:
            raise PointAtInfinityError(f"{n}P reached the point at infinity en route")
    x, y = acc
    rec = RatPoint(curve, x, y)
    a, b = rec.square_denominator_split()
    return MultipleRecord(n=n, x=x, y=y, a=a, b=b)


def multiples(point: RatPoint, n_max: int) -> dict[int, MultipleRecord]:
    """MultipleRecords for 1..n_max, sharing one left-to-right addition chain."""
    curve = point.curve
    out: dict[int, MultipleRecord] = {}
    acc: _Affine | None = None
    base = (point.x, point.y)
    for n in range(1, n_max + 1):
        acc = _add(curve, acc, base)
        if acc is None:
            raise PointAtInfinityError(f"{n}P is the point at infinity (torsion of order {n})")
        x, y = acc
        rec = RatPoint(curve, x, y)
        a, b = rec.square_denominator_split()
        out[n] = MultipleRecord(n=n, x=x, y=y, a=a, b=b)
    return out
