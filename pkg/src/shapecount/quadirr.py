"""Exact arithmetic in Q(sqrt(D)) for positive non-square D.

A value is p + q*sqrt(D) with rational p, q.  The only operation that
matters downstream is the exact sign (fundamental-domain membership must
never depend on floats), decided by comparing p^2 against q^2*D when p and
q have opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError

RatLike = Fraction | int


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class QuadIrr:
    """p + q*sqrt(D), exact."""

    p: Fraction
    q: Fraction
    D: int

    def __post_init__(self):
        if self.D <= 0 or _is_square(self.D):
            raise InputError(f"QuadIrr needs a positive non-square D, got {self.D}")
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def of(cls, p: RatLike, q: RatLike, D: int) -> "QuadIrr":
        return cls(Fraction(p), Fraction(q), D)

    def _coerce(self, other) -> "QuadIrr":
        if isinstance(other, QuadIrr):
            if other.D != self.D:
                raise InputError("mixed radicands")
            return other
        return QuadIrr(Fraction(other), Fraction(0), self.D)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadIrr(self.p + o.p, self.q + o.q, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadIrr(self.p - o.p, self.q - o.q, self.D)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadIrr(-self.p, -self.q, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadIrr(
            self.p * o.p + self.q * o.q * self.D,
            self.p * o.q + self.q * o.p,
            self.D,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadIrr":
        den = self.p * self.p - self.q * self.q * self.D
        if den == 0:
            raise ZeroDivisionError("zero QuadIrr")  # only 0 has zero norm: D non-square
        return QuadIrr(self.p / den, -self.q / den, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def conjugate(self) -> "QuadIrr":
        return QuadIrr(self.p, -self.q, self.D)

    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        lhs = p * p
        rhs = q * q * self.D
        if p > 0:  # q < 0: sign decided by |p| vs |q|sqrt(D)
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return 1 if lhs < rhs else (-1 if lhs > rhs else 0)

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def floor(self) -> int:
        n = int(float(self.p) + float(self.q) * self.D**0.5)
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * self.D**0.5

    def __repr__(self):
        return f"({self.p} + {self.q}*sqrt({self.D}))"
