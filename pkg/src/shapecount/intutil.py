"""Exact integer utilities: bounds with square roots, congruences, sieves.

All routines are exact.  Square-root comparisons are done by squaring both
sides, never through floats; the *_adjusted helpers compute a floor/ceil
estimate with math.isqrt and then correct it by exact predicate checks.
"""

from __future__ import annotations

import math
from math import gcd, isqrt

import numpy as np

from .errors import FactorBudgetError, InputError

FACTOR_BUDGET = 10**6


def max_square_below(num: int, den: int = 1) -> int:
    """Largest q >= 0 with q*q*den < num, or -1 if there is none."""
    if num <= 0:
        return -1
    return isqrt((num - 1) // den)


def floor_add_sqrt(a: int, rad: int, m: int) -> int:
    """floor((a + sqrt(rad)) / m) for rad >= 0, m > 0, exactly."""
    x = (a + isqrt(rad)) // m
    # x <= (a+sqrt(rad))/m  <=>  m*x - a <= 0  or  (m*x - a)^2 <= rad
    while True:
        v = m * (x + 1) - a
        if v <= 0 or v * v <= rad:
            x += 1
        else:
            break
    while True:
        v = m * x - a
        if v <= 0 or v * v <= rad:
            break
        x -= 1
    return x


def ceil_sub_sqrt(a: int, rad: int, m: int) -> int:
    """ceil((a - sqrt(rad)) / m) for rad >= 0, m > 0, exactly."""
    return -floor_add_sqrt(-a, rad, m)


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solutions of a*x = b (mod m) as (residue, modulus), or None.

    m may be negative (treated as |m|); m == 0 is rejected.
    """
    m = abs(m)
    if m == 0:
        raise InputError("zero modulus")
    if m == 1:
        return (0, 1)
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    if g == m:  # a = 0 mod m, b = 0 mod m
        return (0, 1)
    a, b, m = a // g, b // g, m // g
    return ((b * pow(a, -1, m)) % m, m)


def crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine x = r1 (mod m1), x = r2 (mod m2); None if incompatible."""
    g = gcd(m1, m2)
    if (r1 - r2) % g:
        return None
    lcm = m1 // g * m2
    # x = r1 + m1 * k, with m1*k = r2 - r1 (mod m2)
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
    return ((r1 + m1 * k) % lcm, lcm)


def count_in_ap(lo: int, hi: int, res: int, mod: int) -> int:
    """Number of x in [lo, hi] with x = res (mod mod)."""
    if lo > hi:
        return 0
    return (hi - res) // mod - (lo - 1 - res) // mod


def first_in_ap(lo: int, res: int, mod: int) -> int:
    """Smallest x >= lo with x = res (mod mod)."""
    return lo + (res - lo) % mod


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(flags)]


def squarefree_flags(n: int) -> np.ndarray:
    """Boolean array f of length n+1 with f[k] true iff k is squarefree (f[0] false)."""
    flags = np.ones(n + 1, dtype=bool)
    if n >= 0:
        flags[0] = False
    for p in range(2, isqrt(n) + 1):
        if flags[p]:  # p squarefree so far means p is prime here
            flags[p * p :: p * p] = False
    return flags


def smallest_prime_factors(n: int) -> np.ndarray:
    """Array spf of length n+1 with spf[k] = least prime factor of k (spf[1] = 1)."""
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == np.arange(p * p, n + 1, p)] = p
    return spf


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise InputError("valuation of zero")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorize(n: int, budget: int = FACTOR_BUDGET) -> dict[int, int]:
    """Prime factorization of |n| by trial division up to `budget`.

    If an unfactored cofactor beyond budget**2 remains, the result would be
    unreliable, so we fail hard instead of guessing.
    """
    n = abs(n)
    if n == 0:
        raise InputError("factorize(0)")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f <= budget:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out[f] = e
        f += inc[i]
        i = (i + 1) % 8
    if n > 1:
        if f * f > n:
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorBudgetError(f"cofactor {n} exceeds trial-division budget {budget}")
    return out


def is_squarefree(n: int, budget: int = FACTOR_BUDGET) -> bool:
    if n == 0:
        return False
    n = abs(n)
    if n % 4 == 0 or n % 9 == 0 or n % 25 == 0:
        return False
    return all(e == 1 for e in factorize(n, budget).values())


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1.

    For n = 2 this gives 0 for even a, +1 for a = +-1 (mod 8) and -1 for
    a = +-3 (mod 8).
    """
    if n <= 0:
        raise InputError("kronecker needs n >= 1")
    result = 1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            if a % 8 in (3, 5):
                result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of maximal quadratic orders (1 included)."""
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def nearest_int(x: float) -> int:
    return int(math.floor(x + 0.5))
