from fractions import Fraction
from math import gcd, isqrt

import pytest

from shapecount.errors import FactorBudgetError, InputError
from shapecount.intutil import (
    ceil_sub_sqrt,
    count_in_ap,
    crt,
    factorize,
    first_in_ap,
    floor_add_sqrt,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker,
    max_square_below,
    smallest_prime_factors,
    solve_linear_congruence,
    squarefree_flags,
)
from shapecount.quadirr import QuadIrr


def test_kronecker_fixtures():
    assert kronecker(-3, 2) == -1
    assert kronecker(5, 5) == 0
    assert kronecker(13, 3) == 1
    assert kronecker(-7, 2) == 1  # -7 = 1 (mod 8)
    for D in (-3, 5, -4, 12):
        assert kronecker(D, 1) == 1


def test_kronecker_multiplicative():
    import random

    rng = random.Random(1)
    for _ in range(500):
        a = rng.randint(-50, 50)
        m, n = rng.randint(1, 60), rng.randint(1, 60)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_euler_criterion():
    for p in (3, 5, 7, 11, 13, 17):
        for a in range(1, 30):
            if a % p == 0:
                assert kronecker(a, p) == 0
            else:
                assert kronecker(a, p) == (1 if pow(a, (p - 1) // 2, p) == 1 else -1)


def test_fundamental_discriminants():
    assert is_fundamental_discriminant(1)
    assert is_fundamental_discriminant(-3)
    assert is_fundamental_discriminant(-4)
    assert is_fundamental_discriminant(8)
    assert is_fundamental_discriminant(12)  # disc of Q(sqrt 3)
    assert is_fundamental_discriminant(20) is False
    assert is_fundamental_discriminant(-15)
    assert is_fundamental_discriminant(45) is False
    assert is_fundamental_discriminant(-48) is False


def test_sqrt_bounds():
    assert max_square_below(10**10, 3) == 57735
    assert 3 * 57735**2 < 10**10 < 3 * 57736**2
    assert max_square_below(1, 27) == 0
    assert max_square_below(0, 5) == -1
    for a, rad, m in ((5, 37, 3), (-11, 2, 7), (0, 0, 2), (100, 9999, 13)):
        lo = ceil_sub_sqrt(a, rad, m)
        hi = floor_add_sqrt(a, rad, m)
        root = rad**0.5
        assert m * hi - a <= root + 1e-9 < m * (hi + 1) - a
        assert a - m * lo <= root + 1e-9 < a - m * (lo - 1)


def test_congruence_solving():
    assert solve_linear_congruence(1, 3, 5) == (3, 5)
    assert solve_linear_congruence(2, 1, 4) is None
    assert solve_linear_congruence(2, 2, 4) == (1, 2)
    assert solve_linear_congruence(6, 3, -9) == (2, 3)
    assert crt(1, 3, 2, 5) == (7, 15)
    assert crt(1, 4, 3, 6) == (9, 12)
    assert crt(1, 4, 2, 6) is None
    assert crt(1, 4, 1, 2) == (1, 4)
    assert count_in_ap(1, 10, 2, 3) == 3  # 2, 5, 8
    assert count_in_ap(5, 4, 0, 1) == 0
    assert first_in_ap(7, 2, 5) == 7
    assert first_in_ap(8, 2, 5) == 12


def test_sieves_and_factoring():
    sf = squarefree_flags(50)
    assert sf[1] and sf[30] and not sf[12] and not sf[49] and not sf[0]
    spf = smallest_prime_factors(100)
    assert spf[97] == 97 and spf[100] == 2 and spf[91] == 7 and spf[1] == 1
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-97) == {97: 1}
    assert is_squarefree(2 * 3 * 5 * 7) and not is_squarefree(98)
    with pytest.raises(FactorBudgetError):
        factorize(1048583**4, budget=10**6)
    with pytest.raises(InputError):
        factorize(0)


def test_quadirr_signs():
    x = QuadIrr(Fraction(3), Fraction(-1), 5)  # 3 - sqrt(5) > 0
    assert x.sign() == 1
    y = QuadIrr(Fraction(2), Fraction(-1), 5)  # 2 - sqrt(5) < 0
    assert y.sign() == -1
    z = QuadIrr(Fraction(-2), Fraction(1), 5)
    assert z.sign() == 1
    assert QuadIrr(Fraction(0), Fraction(0), 5).sign() == 0
    assert (x * y).sign() == -1
    assert (x - x).sign() == 0


def test_quadirr_arithmetic_and_floor():
    e = QuadIrr(Fraction(3, 2), Fraction(1, 2), 5)  # (3 + sqrt 5)/2
    assert (e * e.conjugate() - 1).sign() == 0
    assert e.floor() == 2
    assert (e * e).floor() == 6
    assert ((e * e * e) - QuadIrr(9, 4, 5)).sign() == 0  # e^3 = 9 + 4 sqrt 5
    inv = e.inverse()
    assert (e * inv - 1).sign() == 0
    assert (e / e - 1).sign() == 0
    assert QuadIrr(-7, 0, 5).floor() == -7
    assert QuadIrr(Fraction(-1, 2), Fraction(-1), 2).floor() == -2
    with pytest.raises(InputError):
        QuadIrr(Fraction(1), Fraction(1), 9)
    with pytest.raises(InputError):
        QuadIrr(1, 1, 5) + QuadIrr(1, 1, 7)


def test_quadirr_orderings():
    a = QuadIrr(0, 1, 2)  # sqrt 2
    b = QuadIrr(Fraction(3, 2), 0, 2)
    assert a < b and b > a and a <= a and a >= a
    assert not (a < a)
