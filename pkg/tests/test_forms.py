import random

import pytest

from shapecount.errors import InputError, RangeError
from shapecount.forms import (
    CubicForm,
    QuadForm,
    Unimodular,
    act_cubic,
    act_quadratic,
    is_irreducible_cubic,
)


def test_quadratic_disc_values():
    assert QuadForm(1, 1, 1).disc == -3
    assert QuadForm(1, 3, 1).disc == 5
    assert QuadForm(1, 0, 1).disc == -4


def test_adjoint():
    assert QuadForm(1, 1, 1).adjoint() == QuadForm(1, -1, 1)
    assert QuadForm(1, 3, 1).adjoint() == QuadForm(1, -3, 1)
    assert QuadForm(2, 1, 3).adjoint() == QuadForm(3, -1, 2)
    q = QuadForm(5, -7, 3)
    assert q.adjoint().disc == q.disc


def test_cubic_disc_values():
    assert CubicForm(1, 0, 0, 1).disc == -27
    assert CubicForm(0, 1, 1, 0).disc == 1
    assert CubicForm(1, 2, -1, -1).disc == 49
    # cross-check against the adjoint-square identity for the (1,1,1) family
    assert QuadForm(1, 1, 1).adjoint()(2, -1) ** 2 == 49


def test_hessian_values():
    assert CubicForm(1, 0, 0, 1).hessian() == QuadForm(0, -9, 0)
    assert QuadForm(0, -9, 0).disc == 81 == -3 * (-27)
    assert CubicForm(0, 1, 1, 0).hessian() == QuadForm(1, 1, 1)
    assert CubicForm(1, 2, -1, -1).hessian() == QuadForm(7, 7, 7)


def test_quadratic_action_fixtures():
    q = QuadForm(2, 1, 3)
    assert act_quadratic(Unimodular.identity(), q) == q
    assert act_quadratic(Unimodular(0, 1, -1, 0), q) == QuadForm(3, -1, 2)
    # substitution convention: rows act on (x, y) from the right
    assert act_quadratic(Unimodular(1, 1, 0, 1), QuadForm(1, 0, 1)) == QuadForm(2, 2, 1)


def test_order_three_automorphism():
    s = Unimodular(-1, 1, -1, 0)
    assert (s @ s @ s).is_identity()
    f = CubicForm(1, 2, -1, -1)
    assert act_cubic(s, f) == f


def test_cubic_action_fixtures():
    f = CubicForm(1, 0, 0, 1)
    assert act_cubic(Unimodular.identity(), f) == f
    g = Unimodular(0, 1, -1, 0)
    ff = act_cubic(g, f)
    assert ff == CubicForm(1, 0, 0, -1)
    assert ff.disc == f.disc == -27


def test_action_composition_and_inverse():
    rng = random.Random(3)
    for _ in range(200):
        f = CubicForm(*[rng.randint(-9, 9) for _ in range(4)])
        g1 = Unimodular(1, rng.randint(-3, 3), 0, 1) @ Unimodular(0, 1, -1, 0)
        g2 = Unimodular(1, 0, rng.randint(-3, 3), 1)
        assert act_cubic(g2, act_cubic(g1, f)) == act_cubic(g2 @ g1, f)
        assert act_cubic(g1.inverse(), act_cubic(g1, f)) == f


def test_disc_invariance_and_hessian_covariance_randomized():
    rng = random.Random(11)
    done = 0
    while done < 5000:
        f = CubicForm(*[rng.randint(-15, 15) for _ in range(4)])
        g = Unimodular.identity()
        for _ in range(3):
            g = g @ Unimodular(1, 0, rng.randint(-4, 4), 1)
            g = g @ Unimodular(0, 1, -1, 0)
        if rng.random() < 0.5:
            g = g @ Unimodular(1, 0, 0, -1)
        ff = act_cubic(g, f)
        assert ff.disc == f.disc
        hess = (
            f.b**2 - 3 * f.a * f.c,
            f.b * f.c - 9 * f.a * f.d,
            f.c**2 - 3 * f.b * f.d,
        )
        if hess != (0, 0, 0):  # perfect cubes have vanishing covariant
            assert ff.hessian() == act_quadratic(g, f.hessian())
            assert f.hessian().disc == -3 * f.disc
        done += 1


def test_content_primitive():
    assert QuadForm(7, 7, 7).content_primitive() == (7, QuadForm(1, 1, 1))
    assert QuadForm(1, 0, 1).content_primitive() == (1, QuadForm(1, 0, 1))
    assert CubicForm(2, 2, 2, 2).content_primitive() == (2, CubicForm(1, 1, 1, 1))
    assert QuadForm(-6, 0, -9).content_primitive() == (3, QuadForm(-2, 0, -3))


def test_irreducibility():
    assert is_irreducible_cubic(CubicForm(1, 2, -1, -1))
    assert not is_irreducible_cubic(CubicForm(0, 1, 1, 0))
    assert is_irreducible_cubic(CubicForm(1, 0, 0, 2))
    assert not is_irreducible_cubic(CubicForm(1, 3, 3, 1))
    assert not is_irreducible_cubic(CubicForm(2, 0, 0, -2))
    assert not is_irreducible_cubic(CubicForm(6, 1, -1, 0))  # x | f
    with pytest.raises(InputError):
        is_irreducible_cubic(CubicForm(0, 0, 0, 0))


def test_irreducibility_against_direct_root_scan():
    rng = random.Random(5)
    for _ in range(400):
        f = CubicForm(*[rng.randint(-12, 12) for _ in range(4)])
        if f.is_zero():
            continue
        has_root = f.a == 0 or f.d == 0
        for p in range(1, 13):
            for q in range(1, 13):
                if f(p, q) == 0 or f(-p, q) == 0:
                    has_root = True
        # a root with large numerator/denominator is impossible at these sizes
        assert is_irreducible_cubic(f) == (not has_root), f


def test_range_contract():
    with pytest.raises(RangeError):
        QuadForm(2**63, 0, 1)
    with pytest.raises(RangeError):
        QuadForm(2**62, 0, -2**62)  # discriminant overflows 64-bit
    with pytest.raises(InputError):
        QuadForm(0, 0, 0)
    with pytest.raises(InputError):
        Unimodular(1, 0, 0, 2)


def test_unimodular_ops():
    g = Unimodular(2, 1, 1, 1)
    assert g.det == 1
    assert (g @ g.inverse()).is_identity()
    assert g.power(3) == g @ g @ g
    assert g.power(-2) == (g.inverse() @ g.inverse())
    assert g.vec((1, 0)) == (2, 1)
