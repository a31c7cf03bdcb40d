"""Maximality of cubic rings at primes, and local densities over a shape
lattice.

The criterion: the ring of a cubic form f fails to be maximal at p exactly
when f = 0 (mod p), or some multiple root of f in P^1(F_p), moved to
(1 : 0) by a determinant-one integral substitution, leaves a leading
coefficient divisible by p^2 (the next coefficient is then automatically
divisible by p).  Everything only depends on f mod p^2, which is what makes
the exact density enumeration below finite.

`local_density(D, p)` is the closed-form density of lattice points whose
ring is maximal at p; `local_density_empirical(Q, p)` recomputes it by
exhausting lattice residues mod p^2 and must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import InputError
from .forms import CubicForm, QuadForm, is_square_int
from .intutil import factorize, is_fundamental_discriminant, is_squarefree, kronecker, valuation
from .lattice import SQUARE, ShapeLattice, ShapePoint, shape_lattice

_SMALL_ROOT_SCAN = 50


@dataclass(frozen=True)
class SieveConfig:
    """exact: test every prime with p^2 | disc (needs factoring the
    discriminant); truncated: test only primes <= bound."""

    mode: str = "exact"
    bound: int | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "truncated"):
            raise InputError(f"unknown sieve mode {self.mode!r}")
        if self.mode == "truncated" and (self.bound is None or self.bound < 2):
            raise InputError("truncated sieve needs a bound >= 2")


EXACT_SIEVE = SieveConfig()


@dataclass(frozen=True)
class DensityEntry:
    p: int
    case: str
    density: Fraction


@dataclass(frozen=True)
class PureMaxData:
    """Data controlling maximality in the square-discriminant families:
    d_prime = d/3, a_prime = r^3*d_prime - 9a, and the conductor factor k
    with ring discriminant -3*k^2."""

    a_prime: int
    d_prime: int
    k: int


def _proj_line(p: int):
    yield (1, 0)
    for u in range(p):
        yield (u, 1)


def _fx(f: CubicForm, u: int, v: int) -> int:
    return 3 * f.a * u * u + 2 * f.b * u * v + f.c * v * v


def _fy(f: CubicForm, u: int, v: int) -> int:
    return f.b * u * u + 2 * f.c * u * v + 3 * f.d * v * v


def _is_multiple_root(f: CubicForm, p: int, u: int, v: int) -> bool:
    return f(u, v) % p == 0 and _fx(f, u, v) % p == 0 and _fy(f, u, v) % p == 0


def _poly_gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """gcd in F_p[x]; coefficient lists are little-endian."""

    def norm(c):
        while c and c[-1] % p == 0:
            c.pop()
        return c

    a, b = norm([x % p for x in a]), norm([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[i + shift] = (a[i + shift] - coef * bc) % p
            a = norm(a)
            if not a:
                break
        a, b = b, a
    return a


def _multiple_roots(f: CubicForm, p: int) -> list[tuple[int, int]]:
    """Multiple roots of f in P^1(F_p); at most one exists unless f = 0."""
    if p <= _SMALL_ROOT_SCAN:
        return [(u, v) for (u, v) in _proj_line(p) if _is_multiple_root(f, p, u, v)]
    roots = []
    if f.a % p == 0 and f.b % p == 0:
        roots.append((1, 0))
    poly = [f.d % p, f.c % p, f.b % p, f.a % p]
    deriv = [f.c % p, 2 * f.b % p, 3 * f.a % p]
    g = _poly_gcd_mod(poly, deriv, p)
    while len(g) > 2:  # repeated factors: peel with another derivative gcd
        g = _poly_gcd_mod(g, [(i + 1) * c % p for i, c in enumerate(g[1:])], p)
    if len(g) == 2:
        u = (-g[0] * pow(g[1], -1, p)) % p
        if _is_multiple_root(f, p, u, 1):
            roots.append((u, 1))
    return roots


def _root_moved_coeffs(f: CubicForm, p: int, u: int, v: int) -> tuple[int, int]:
    """(a', b') of f after a determinant-one move of (u : v) to (1 : 0).

    a' mod p^2 and b' mod p do not depend on the lift or the completion;
    the keyword shifts in is_maximal_at exist to let the tests check that.
    """
    if v == 0:
        return f.a, f.b
    g = gcd(u, v)
    u, v = u // g, v // g
    # second row (x0, y0) with u*y0 - v*x0 = 1
    gg, a_, b_ = _xgcd(u, v)
    assert gg == 1
    y0, x0 = a_, -b_
    ap = f(u, v)
    bp = (
        3 * f.a * u * u * x0
        + f.b * (u * u * y0 + 2 * u * v * x0)
        + f.c * (v * v * x0 + 2 * u * v * y0)
        + 3 * f.d * v * v * y0
    )
    return ap, bp


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def is_maximal_at(f: CubicForm, p: int, lift_shift: tuple[int, int] = (0, 0)) -> bool:
    """True iff the cubic ring of f is maximal at the prime p.

    f must have nonzero discriminant.  lift_shift adds p times the given
    pair to the root lift before the move; the result is provably
    independent of it (exercised in tests).
    """
    if f.disc == 0:
        raise InputError("zero discriminant")
    if f.a % p == 0 and f.b % p == 0 and f.c % p == 0 and f.d % p == 0:
        return False
    for (u, v) in _multiple_roots(f, p):
        uu, vv = u + p * lift_shift[0], v + p * lift_shift[1]
        if uu == 0 and vv == 0:
            uu, vv = u, v
        ap, bp = _root_moved_coeffs(f, p, uu, vv)
        if ap % (p * p) == 0 and bp % p == 0:
            return False
    return True


def is_maximal(f: CubicForm, sieve: SieveConfig = EXACT_SIEVE, prime_hint=None) -> bool:
    """Maximality at all primes (exact) or all primes up to the bound.

    Only primes with p^2 | disc can fail, so the exact mode factors the
    discriminant (prime_hint, when given, must contain every prime whose
    square can divide it and skips the factorization).
    """
    disc = f.disc
    if disc == 0:
        raise InputError("zero discriminant")
    if sieve.mode == "truncated":
        p = 2
        for p in _primes_below(sieve.bound + 1):
            if disc % (p * p) == 0 and not is_maximal_at(f, p):
                return False
        return True
    ps = prime_hint if prime_hint is not None else factorize(disc).keys()
    for p in sorted(set(ps)):
        if disc % (p * p) == 0 and not is_maximal_at(f, p):
            return False
    return True


def _primes_below(n: int) -> list[int]:
    from .intutil import primes_up_to

    return primes_up_to(n - 1)


# ---------------------------------------------------------------------------
# closed-form densities

def local_density(D: int, p: int) -> Fraction:
    """Density of shape-lattice points (for a shape of non-square
    discriminant D) whose ring is maximal at p."""
    if D % 4 not in (0, 1):
        raise InputError("not a discriminant")
    if p == 2:
        v = valuation(D, 2)
        if v == 0:
            return Fraction(3, 4) if D % 8 == 5 else Fraction(1, 2)
        if v == 2:
            m = D // 4
            return Fraction(0) if m % 4 == 1 else Fraction(1, 2)
        if v == 3:
            return Fraction(1, 2)
        return Fraction(0)
    if p == 3:
        v = valuation(D, 3)
        if v == 0:
            return Fraction(16, 27)
        if v == 1:
            return Fraction(22, 27)
        if v == 2:
            return Fraction(2, 3)
        return Fraction(0)
    v = valuation(D, p)
    if v == 0:
        if kronecker(D, p) == 1:
            return Fraction((p - 1) ** 2 * (p + 2), p**3)
        return Fraction(p * p - 1, p * p)
    if v == 1:
        return Fraction(p - 1, p)
    return Fraction(0)


def density_table(D: int, primes) -> list[DensityEntry]:
    out = []
    for p in primes:
        v = valuation(D, p) if D % p == 0 else 0
        case = f"({D}/{p}) = {kronecker(D, p)}" if v == 0 else f"{p}^{v} || D"
        out.append(DensityEntry(p, case, local_density(D, p)))
    return out


def local_density_empirical(q_or_lattice, p: int) -> Fraction:
    """Exact density of maximal points by exhausting lattice residues mod p^2.

    The cubic coefficients are integer-linear in the lattice coordinates,
    and maximality at p only depends on them mod p^2, so enumerating the
    coordinates of the basis expansion mod p^2 is exhaustive.
    """
    lat = q_or_lattice if isinstance(q_or_lattice, ShapeLattice) else shape_lattice(q_or_lattice)
    from .lattice import point_to_form

    (u1, u2), (v1, v2) = lat.basis
    f1 = point_to_form(lat.point(u1, u2))
    f2 = point_to_form(lat.point(v1, v2))
    m = p * p
    n = m * m
    i = np.repeat(np.arange(m, dtype=np.int64), m)
    j = np.tile(np.arange(m, dtype=np.int64), m)
    coeffs = [(c1 * i + c2 * j) % m for c1, c2 in zip(f1.coeffs(), f2.coeffs())]
    a, b, c, d = coeffs
    not_max = (a % p == 0) & (b % p == 0) & (c % p == 0) & (d % p == 0)
    for (u, v) in _proj_line(p):
        fv = (a * u**3 + b * u * u * v + c * u * v * v + d * v**3) % p
        fxv = (3 * a * u * u + 2 * b * u * v + c * v * v) % p
        fyv = (b * u * u + 2 * c * u * v + 3 * d * v * v) % p
        mult = (fv == 0) & (fxv == 0) & (fyv == 0)
        if not mult.any():
            continue
        if v == 0:
            ap, bp = a, b
        else:
            gg, a_, b_ = _xgcd(u, 1)
            y0, x0 = a_, -b_
            ap = a * u**3 + b * u * u + c * u + d
            bp = 3 * a * u * u * x0 + b * (u * u * y0 + 2 * u * x0) + c * (x0 + 2 * u * y0) + 3 * d * y0
        not_max |= mult & (ap % m == 0) & (bp % p == 0)
    return Fraction(int(n - int(not_max.sum())), n)


def is_admissible_shape_disc(D: int) -> bool:
    """Shapes whose discriminant can carry a maximal order: D or -D/3 a
    fundamental discriminant; among squares only 1 and 9."""
    if D % 4 not in (0, 1):
        return False
    if D > 0 and is_square_int(D):
        return D in (1, 9)
    if is_fundamental_discriminant(D):
        return True
    return D % 3 == 0 and is_fundamental_discriminant(-D // 3)


# ---------------------------------------------------------------------------
# square-discriminant (pure) families

def pure_max_data(point: ShapePoint) -> PureMaxData:
    lat = point.lattice
    if lat.kind != SQUARE:
        raise InputError("pure_max_data needs a square-discriminant point")
    D = lat.shape.disc
    a, d = point.x, point.y
    if D == 1:
        return PureMaxData(a_prime=a, d_prime=d, k=3 * abs(a * d))
    if D == 9:
        dp = d // 3
        ap = lat.shape.r**3 * dp - 9 * a
        return PureMaxData(a_prime=ap, d_prime=dp, k=abs(ap * dp))
    raise InputError("maximal orders only occur for square discriminant 1 or 9")


def is_maximal_pure(point: ShapePoint) -> bool:
    """Maximality for the square-discriminant families (D = 1 or 9).

    D = 1 (forms a x^3 + d y^3): a, d squarefree, coprime, a^2 != d^2 mod 9.
    D = 9: with d' = d/3 and a' = r^3 d' - 9a: a', d' squarefree and coprime.
    """
    lat = point.lattice
    if lat.kind != SQUARE:
        raise InputError("is_maximal_pure needs a square-discriminant point")
    if not point.in_plus_cone:
        raise InputError("point must lie in the positive cone")
    D = lat.shape.disc
    if D == 1:
        a, d = point.x, point.y
        return (
            gcd(abs(a), abs(d)) == 1
            and is_squarefree(a)
            and is_squarefree(d)
            and (a * a - d * d) % 9 != 0
        )
    data = pure_max_data(point)
    return (
        gcd(abs(data.a_prime), abs(data.d_prime)) == 1
        and is_squarefree(data.a_prime)
        and is_squarefree(data.d_prime)
    )
