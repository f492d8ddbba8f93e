"""Exact arithmetic over the ring of numbers (a + b*sqrt(2)) / 2**k.

Every amplitude appearing in the two-qubit constructions lives in this
ring, so overlaps and probabilities can be computed with no floating
point error at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ExactAmplitude:
    """Represents (a + b*sqrt(2)) / 2**log2denom, kept in canonical form.

    Canonical form: log2denom >= 0, and a, b are never both even while
    log2denom > 0 (the shared factor of 2 is cancelled). Zero is (0, 0, 0).
    Equality is therefore structural.
    """

    a: int
    b: int
    log2denom: int = 0

    def __post_init__(self) -> None:
        if self.log2denom < 0:
            raise ValueError("log2denom must be non-negative")
        a, b, k = self.a, self.b, self.log2denom
        if a == 0 and b == 0:
            k = 0
        else:
            while k > 0 and a % 2 == 0 and b % 2 == 0:
                a //= 2
                b //= 2
                k -= 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "log2denom", k)

    @classmethod
    def from_int(cls, n: int) -> ExactAmplitude:
        return cls(n, 0, 0)

    @classmethod
    def from_fraction(cls, f: Fraction) -> ExactAmplitude:
        """Exact conversion; only dyadic rationals live in this ring."""
        den = f.denominator
        k = den.bit_length() - 1
        if 1 << k != den:
            raise ValueError(f"{f} is not dyadic; cannot represent exactly")
        return cls(f.numerator, 0, k)

    def __add__(self, other: ExactAmplitude) -> ExactAmplitude:
        k = max(self.log2denom, other.log2denom)
        sa = self.a << (k - self.log2denom)
        sb = self.b << (k - self.log2denom)
        oa = other.a << (k - other.log2denom)
        ob = other.b << (k - other.log2denom)
        return ExactAmplitude(sa + oa, sb + ob, k)

    def __neg__(self) -> ExactAmplitude:
        return ExactAmplitude(-self.a, -self.b, self.log2denom)

    def __sub__(self, other: ExactAmplitude) -> ExactAmplitude:
        return self + (-other)

    def __mul__(self, other: ExactAmplitude) -> ExactAmplitude:
        a = self.a * other.a + 2 * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return ExactAmplitude(a, b, self.log2denom + other.log2denom)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} has an irrational part")
        return Fraction(self.a, 1 << self.log2denom)

    def squared_magnitude(self) -> Fraction:
        """|x|^2 as an exact rational (all amplitudes here are real)."""
        return (self * self).as_fraction()

    def to_float(self) -> float:
        return (self.a + self.b * SQRT2) / (1 << self.log2denom)

    def __str__(self) -> str:
        num = f"{self.a}" if self.b == 0 else f"({self.a}{self.b:+}√2)"
        if self.log2denom == 0:
            return num
        return f"{num}/{1 << self.log2denom}"


ZERO = ExactAmplitude(0, 0, 0)
ONE = ExactAmplitude(1, 0, 0)
HALF = ExactAmplitude(1, 0, 1)
# 1/sqrt(2) = sqrt(2)/2
INV_SQRT2 = ExactAmplitude(0, 1, 1)
