"""Exact reals of the form t*sqrt(d) with t rational and d square-free."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


@lru_cache(maxsize=None)
def squarefree_split(m: int) -> tuple[int, int]:
    """Return (s, d) with m = s**2 * d and d square-free."""
    if m <= 0:
        raise ValueError(f"expected a positive integer, got {m}")
    s, d = 1, 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return s, d * m


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__} {x!r}")


class QuadReal:
    """The real number ``t * sqrt(d)``.

    ``t`` is a :class:`fractions.Fraction` and ``d`` a square-free positive
    integer.  Products and quotients are exact; two values with the same ``d``
    have a rational ratio.
    """

    __slots__ = ("t", "d")

    def __init__(self, t=1, d: int = 1):
        t = _as_fraction(t)
        d = int(d)
        s, d = squarefree_split(d)
        self.t = t * s
        self.d = d if self.t != 0 else 1

    @classmethod
    def sqrt_ratio(cls, q: int, p: int) -> QuadReal:
        """sqrt(q/p) for positive integers q, p."""
        # sqrt(q/p) = sqrt(q*p)/p
        return cls(Fraction(1, p), q * p)

    def __float__(self) -> float:
        return float(self.t) * math.sqrt(self.d)

    @property
    def value(self) -> float:
        return float(self)

    def __repr__(self):
        if self.d == 1:
            return f"QuadReal({self.t})"
        return f"QuadReal({self.t}*sqrt({self.d}))"

    def __str__(self):
        if self.d == 1:
            return str(self.t)
        if self.t == 1:
            return f"sqrt({self.d})"
        return f"{self.t}*sqrt({self.d})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        if not isinstance(other, QuadReal):
            return NotImplemented
        return self.t == other.t and (self.d == other.d or self.t == 0)

    def __hash__(self):
        return hash((self.t, self.d))

    def __neg__(self) -> QuadReal:
        return QuadReal(-self.t, self.d)

    def __abs__(self) -> QuadReal:
        return QuadReal(abs(self.t), self.d)

    def sign(self) -> int:
        return (self.t > 0) - (self.t < 0)

    def __mul__(self, other) -> QuadReal:
        if isinstance(other, QuadReal):
            return QuadReal(self.t * other.t, self.d * other.d)
        return QuadReal(self.t * _as_fraction(other), self.d)

    __rmul__ = __mul__

    def reciprocal(self) -> QuadReal:
        if self.t == 0:
            raise ZeroDivisionError("reciprocal of zero")
        # 1/(t sqrt d) = sqrt(d) / (t d)
        return QuadReal(1 / (self.t * self.d), self.d)

    def __truediv__(self, other) -> QuadReal:
        if isinstance(other, QuadReal):
            return self * other.reciprocal()
        return QuadReal(self.t / _as_fraction(other), self.d)

    def ratio(self, other: QuadReal) -> Fraction:
        """Exact rational ratio self/other; requires a shared square-free part."""
        if self.d != other.d:
            raise ValueError(f"ratio of {self} and {other} is irrational")
        return self.t / other.t

    def _cmp(self, other) -> int:
        if not isinstance(other, QuadReal):
            other = QuadReal(other)
        sa, sb = self.sign(), other.sign()
        if sa != sb:
            return (sa > sb) - (sa < sb)
        # same sign: compare squares, flipping for negatives
        a2, b2 = self.t * self.t * self.d, other.t * other.t * other.d
        c = (a2 > b2) - (a2 < b2)
        return c * (sa if sa else 1)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0
