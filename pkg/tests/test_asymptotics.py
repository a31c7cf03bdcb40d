import math

import pytest

from shapecount.errors import InputError
from shapecount.forms import QuadForm
from shapecount.asymptotics import (
    CoeffValue,
    alpha01,
    alpha12,
    beta_of,
    class_number_formula_error,
    dirichlet_l_one,
    field_coefficient,
    order_coefficient,
    order_coefficient_geometric,
    prediction_for,
    pure_field_prediction,
    resolvent_coefficient,
    square_disc_order_prediction,
    universal_constants,
)
from shapecount.reduction import class_group, normalize_shape


def test_l_values():
    assert abs(dirichlet_l_one(-3) - math.pi / (3 * math.sqrt(3))) < 1e-12
    assert abs(dirichlet_l_one(-4) - math.pi / 4) < 1e-12
    assert abs(dirichlet_l_one(5) - math.log((3 + math.sqrt(5)) / 2) / math.sqrt(5)) < 1e-12
    with pytest.raises(InputError):
        dirichlet_l_one(9)
    with pytest.raises(InputError):
        dirichlet_l_one(7)  # 7 = 3 mod 4 is not a discriminant


def test_l_value_against_direct_partial_sum():
    from shapecount.intutil import kronecker

    for D in (-3, 5, -23, 12, -120):
        direct = sum(kronecker(D, n) / n for n in range(1, 200001))
        assert abs(dirichlet_l_one(D) - direct) < abs(D) / 100000.0


def test_alpha_conventions_never_mix():
    for D in (-3, -4, 5, 12, -23, 45):
        expected = (1, 1) if D % 3 == 0 else (0, 2)
        assert (alpha01(D), alpha12(D)) == expected
        assert beta_of(D) == (1 if D > -4 else 0)


def test_order_coefficient_fixtures():
    assert abs(order_coefficient(-3) - math.pi / (3 * math.sqrt(3))) < 1e-10
    assert abs(order_coefficient(-4) - math.pi * math.sqrt(3) / 72) < 1e-10
    # indefinite: log of the fundamental unit appears
    eps = (3 + math.sqrt(5)) / 2
    assert abs(order_coefficient(5) - 3 * math.sqrt(3) * math.log(eps) / (9 * 5)) < 1e-10


def test_geometric_fixtures():
    assert abs(order_coefficient_geometric(QuadForm(1, 1, 1)) - math.pi / (3 * math.sqrt(3))) < 1e-12
    assert abs(order_coefficient_geometric(QuadForm(1, 0, 1)) - math.pi * math.sqrt(3) / 72) < 1e-12
    assert abs(order_coefficient_geometric(QuadForm(1, 3, 1)) - 0.111137) < 1e-5


def test_cross_consistency_sample():
    for D in (-3, -4, -20, -23, 5, 12, 60, 76, -56):
        coef = order_coefficient(D, tol=1e-8)
        for rep in class_group(D).reps:
            geo = order_coefficient_geometric(normalize_shape(rep)[0])
            assert abs(geo - coef) / coef <= 1e-6, (D, rep)


def test_field_coefficient_cohn():
    fc = field_coefficient(-3)
    cohn = 11 * math.sqrt(3) / (36 * math.pi)
    prod = 1.0
    for p in range(5, 200000):
        if p % 3 == 1 and all(p % q for q in range(2, int(p**0.5) + 1)):
            prod *= 1 - 2 / (p * (p + 1))
    assert abs(fc.value / 2 - cohn * prod) < 5e-5
    assert fc.low <= fc.value <= fc.high
    assert field_coefficient(-16).value == 0.0  # inadmissible


def test_field_coefficient_matches_density_product():
    # oriented field coefficient = order coefficient times the local densities
    from shapecount.intutil import primes_up_to
    from shapecount.maximality import local_density

    for D in (-3, -4, 12, 5):
        fc = field_coefficient(D, prime_bound=2 * 10**5)
        prod = 1.0
        for p in primes_up_to(10**4):
            prod *= float(local_density(D, p))
        approx = order_coefficient(D) * prod
        assert abs(fc.value - approx) / fc.value < 5e-3, D


def test_resolvent_coefficient_branches():
    # C0 = 11/9 branch agrees with the abelian constant
    assert abs(resolvent_coefficient(1).value - field_coefficient(-3).value / 2) < 1e-6
    # consistency with the class-group sum for both 3 | d branches
    for d, Ds in ((12, (-36, -4)), (-15, (45, 5)), (-4, (12,)), (8, (-24,))):
        s = sum(0.5 * class_group(D).h * field_coefficient(D).value for D in Ds)
        v = resolvent_coefficient(d).value
        assert abs(v - s) / s < 2e-3, (d, v, s)
    with pytest.raises(InputError):
        resolvent_coefficient(-3)
    with pytest.raises(InputError):
        resolvent_coefficient(18)


def test_universal_constants():
    # first factor / first term, by hand
    assert 1 - 3 / 2**2 + 2 / 2**3 == 0.5
    first_kappa = math.log(2) / (2**2 + 2 - 2)
    assert abs(first_kappa - math.log(2) / 4) < 1e-15
    uc = universal_constants(10**5)
    # independent plain-python partial product/sum at the same bound
    from shapecount.intutil import primes_up_to

    logc = sum(math.log1p(-3 / p**2 + 2 / p**3) for p in primes_up_to(10**5))
    kap = sum(math.log(p) / (p * p + p - 2) for p in primes_up_to(10**5))
    assert abs(math.log(uc.C.value) - logc) < 1e-9
    assert abs(uc.kappa.value - kap) < 1e-9
    uc2 = universal_constants(2 * 10**5)
    assert uc2.C.halfwidth() < uc.C.halfwidth()
    assert uc2.kappa.halfwidth() < uc.kappa.halfwidth()
    assert uc.C.low <= uc2.C.value <= uc.C.high
    assert uc.kappa.low <= uc2.kappa.value <= uc.kappa.high
    big = universal_constants(10**6)
    # the tail from P = 1e5 is ~ 3/(P log P) ~ 7e-7; the certified interval
    # must contain the refined value
    assert abs(uc.C.value - big.C.value) < 1e-6
    assert uc.C.low <= big.C.value <= uc.C.high


def test_square_disc_predictions():
    total, lead, second = square_disc_order_prediction(1, 10**10)
    assert abs(lead - 3 ** -1.5 / 2 * math.sqrt(10**10) * math.log(10**10)) < 1e-6 * lead
    lead9 = square_disc_order_prediction(9, 10**10)[1]
    assert abs(lead9 / (math.sqrt(10**10) * math.log(10**10)) - 3**-0.5 / 18) < 1e-12
    with pytest.raises(InputError):
        square_disc_order_prediction(5, 100)


def test_pure_field_prediction_ratio():
    m1, m9, tot = pure_field_prediction(10**12)
    assert abs(tot - (m1 + 2 * m9)) < 1e-6 * tot
    # leading coefficients differ by 40/15 = 8/3; the second terms decay
    # only like 1/log X, so test at an enormous X
    m1b, m9b, _ = pure_field_prediction(10.0**300)
    assert abs(m1b / m9b - 8 / 3) < 0.02
    # isolating the log-X coefficient by differencing gives 8/3 sharply
    x1, x2 = 10.0**60, 10.0**61
    a1, a9, _ = pure_field_prediction(x1)
    b1, b9, _ = pure_field_prediction(x2)
    s1, s2 = math.sqrt(x1), math.sqrt(x2)
    lead1 = (b1 / s2 - a1 / s1) / math.log(x2 / x1)
    lead9 = (b9 / s2 - a9 / s1) / math.log(x2 / x1)
    assert abs(lead1 / lead9 - 8 / 3) < 1e-9


def test_class_number_formula():
    assert class_number_formula_error(-3) < 1e-10
    assert class_number_formula_error(-23) < 1e-10
    for D in (-4, -23, -56, 5, 13, 60, 76, 316, -9999 + 8):
        assert class_number_formula_error(D) < 1e-8, D


def test_prediction_record():
    pc = prediction_for(QuadForm(1, 1, 1))
    assert pc.D == -3 and pc.gamma == 1 and pc.h == 1
    assert pc.alpha01 == 1 and pc.alpha12 == 1 and pc.beta == 1
    assert str(pc.mu3) == "22/27"
    d = pc.describe()
    assert d["field_coeff_low"] <= d["field_coeff"] <= d["field_coeff_high"]
