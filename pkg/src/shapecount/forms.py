"""Integral binary quadratic and cubic forms and the group actions on them.

Conventions used throughout the package:

* a quadratic form (r, s, t) is r*x^2 + s*x*y + t*y^2, discriminant s^2 - 4rt;
* a cubic form (a, b, c, d) is a*x^3 + b*x^2*y + c*x*y^2 + d*y^3;
* a matrix g = ((g11, g12), (g21, g22)) acts on a form F through the row
  substitution (x, y) -> (x, y) g = (g11*x + g21*y, g12*x + g22*y); cubic
  forms additionally pick up a factor 1/det(g), which keeps the cubic
  discriminant invariant for det = -1 as well;
* lattice points are column vectors and matrices act on them by ordinary
  matrix-vector multiplication (`Unimodular.vec`).

With these conventions the order-3 matrix ((-1, 1), (-1, 0)) fixes the form
x^3 + 2x^2 y - x y^2 - y^3, and the Hessian is a covariant of the twisted
action (checked exhaustively in the tests).

All arithmetic is exact.  Constructors enforce the supported coefficient
range (64-bit signed) and fail loudly on anything outside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InputError, RangeError

INT64_MAX = 2**63 - 1
DISC_MAX = 2**127  # cubic discriminants are computed in 128-bit range


def _check64(*values: int) -> None:
    for v in values:
        if abs(v) > INT64_MAX:
            raise RangeError(f"coefficient {v} outside 64-bit range")


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class QuadForm:
    r: int
    s: int
    t: int

    def __post_init__(self):
        if self.r == 0 and self.s == 0 and self.t == 0:
            raise InputError("zero quadratic form")
        _check64(self.r, self.s, self.t)
        if abs(self.disc) > INT64_MAX:
            raise RangeError("quadratic discriminant outside 64-bit range")

    @property
    def disc(self) -> int:
        return self.s * self.s - 4 * self.r * self.t

    def __call__(self, x: int, y: int) -> int:
        return self.r * x * x + self.s * x * y + self.t * y * y

    def coeffs(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    def adjoint(self) -> "QuadForm":
        """t*x^2 - s*x*y + r*y^2; same discriminant."""
        return QuadForm(self.t, -self.s, self.r)

    def content(self) -> int:
        return gcd(gcd(abs(self.r), abs(self.s)), abs(self.t))

    def content_primitive(self) -> tuple[int, "QuadForm"]:
        g = self.content()
        return g, QuadForm(self.r // g, self.s // g, self.t // g)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def is_positive_definite(self) -> bool:
        return self.disc < 0 and self.r > 0

    def is_negative_definite(self) -> bool:
        return self.disc < 0 and self.r < 0

    def scaled(self, n: int) -> "QuadForm":
        return QuadForm(n * self.r, n * self.s, n * self.t)

    def __repr__(self):
        return f"QuadForm({self.r}, {self.s}, {self.t})"


def validate_shape(q: QuadForm) -> QuadForm:
    """Check the conditions a quadratic form must meet to be a shape."""
    if not q.is_primitive():
        raise InputError(f"shape must be primitive: {q}")
    if q.is_negative_definite():
        raise InputError("a shape cannot be negative definite")
    return q


@dataclass(frozen=True)
class CubicForm:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        _check64(self.a, self.b, self.c, self.d)
        if abs(self.disc) > DISC_MAX:
            raise RangeError("cubic discriminant outside supported range")

    @property
    def disc(self) -> int:
        a, b, c, d = self.a, self.b, self.c, self.d
        return (
            b * b * c * c
            - 4 * a * c**3
            - 4 * b**3 * d
            - 27 * a * a * d * d
            + 18 * a * b * c * d
        )

    def __call__(self, x: int, y: int) -> int:
        return self.a * x**3 + self.b * x * x * y + self.c * x * y * y + self.d * y**3

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def content(self) -> int:
        return gcd(gcd(abs(self.a), abs(self.b)), gcd(abs(self.c), abs(self.d)))

    def content_primitive(self) -> tuple[int, "CubicForm"]:
        if self.is_zero():
            raise InputError("zero cubic form has no content decomposition")
        g = self.content()
        return g, CubicForm(self.a // g, self.b // g, self.c // g, self.d // g)

    def hessian(self) -> QuadForm:
        """Quadratic covariant (b^2 - 3ac, bc - 9ad, c^2 - 3bd).

        Its discriminant is -3 times the cubic discriminant.
        """
        a, b, c, d = self.a, self.b, self.c, self.d
        return QuadForm(b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)

    def __repr__(self):
        return f"CubicForm({self.a}, {self.b}, {self.c}, {self.d})"


@dataclass(frozen=True)
class Unimodular:
    """Integer 2x2 matrix ((a, b), (c, d)) with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        # entries may be arbitrarily large (Pell units); only det is constrained
        if self.det not in (1, -1):
            raise InputError(f"matrix {self.rows()} is not unimodular")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @classmethod
    def identity(cls) -> "Unimodular":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "Unimodular":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, other: "Unimodular") -> "Unimodular":
        return Unimodular(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Unimodular":
        e = self.det
        return Unimodular(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def power(self, n: int) -> "Unimodular":
        m = self.inverse() if n < 0 else self
        out = Unimodular.identity()
        for _ in range(abs(n)):
            out = out @ m
        return out

    def vec(self, v: tuple[int, int]) -> tuple[int, int]:
        """Matrix times column vector."""
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)


def act_quadratic(g: Unimodular, q: QuadForm) -> QuadForm:
    """Form (x, y) -> Q((x, y) g).  Discriminant preserved exactly."""
    r = q(g.a, g.b)
    t = q(g.c, g.d)
    s = q(g.a + g.c, g.b + g.d) - r - t
    return QuadForm(r, s, t)


def act_cubic(g: Unimodular, f: CubicForm) -> CubicForm:
    """Twisted action (1/det g) * f((x, y) g); cubic discriminant invariant."""
    a, b, c, d = f.coeffs()
    p, q_, u, v = g.a, g.b, g.c, g.d  # rows (p, q_), (u, v)
    na = f(p, q_)
    nd = f(u, v)
    nb = 3 * a * p * p * u + b * (p * p * v + 2 * p * q_ * u) + c * (q_ * q_ * u + 2 * p * q_ * v) + 3 * d * q_ * q_ * v
    nc = 3 * a * p * u * u + b * (u * u * q_ + 2 * p * u * v) + c * (v * v * p + 2 * q_ * u * v) + 3 * d * q_ * v * v
    e = g.det
    if e == 1:
        return CubicForm(na, nb, nc, nd)
    return CubicForm(-na, -nb, -nc, -nd)


def is_irreducible_cubic(f: CubicForm) -> bool:
    """True iff f has no linear factor over Q.

    Rational-root search on the content-reduced form: a root p/q in lowest
    terms has p | d and q | a, so it suffices to scan divisors.  a = 0 means
    y divides f; d = 0 means x does.
    """
    if f.is_zero():
        raise InputError("zero cubic form")
    _, g = f.content_primitive()
    a, b, c, d = g.coeffs()
    if a == 0 or d == 0:
        return False
    for p in _divisors(abs(d)):
        for q in _divisors(abs(a)):
            if gcd(p, q) != 1:
                continue
            if g(p, q) == 0 or g(-p, q) == 0:
                return False
    return True


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out
