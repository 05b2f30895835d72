"""Exact dyadic rationals: numerator / 2**exponent in canonical form
(odd numerator, or exponent 0).  Used for the alternating interval families
whose endpoints are finite sums of powers of 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    numerator: int
    exponent: int

    def __init__(self, numerator: int, exponent: int = 0):
        if exponent < 0:
            raise ValueError("exponent must be a natural number")
        while exponent > 0 and numerator % 2 == 0:
            numerator //= 2
            exponent -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        d = q.denominator
        e = d.bit_length() - 1
        if d != 1 << e:
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, e)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def _aligned(self, other: "Dyadic") -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        a = self.numerator << (e - self.exponent)
        b = other.numerator << (e - other.exponent)
        return a, b, e

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic(a - b, e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b, _ = self._aligned(other)
        return a < b

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


def half_power(e: int) -> Dyadic:
    """1 / 2**e."""
    return Dyadic(1, e)
