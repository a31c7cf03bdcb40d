"""Pell equation u^2 - D*w^2 = 4 and the integral symmetry group of a form.

For a primitive form Q = (r, s, t) the determinant-one integral matrices
fixing Q are exactly

    M(U, W) = (( (U + s*W)/2, -r*W ),
               (  t*W,        (U - s*W)/2 ))

as (U, W) runs over the solutions of U^2 - D*W^2 = 4.  For D < 0 that group
is finite of order 6 (D = -3), 4 (D = -4) or 2; for square D it is {+-1};
for non-square D > 0 it is {+-1} times the infinite cyclic group generated
by the minimal solution.

The fundamental solution is computed from the continued fraction of
sqrt(D) (minimal solution of x^2 - D*y^2 = 1), followed by the bounded
search for a half-integral cube root; the direct search over w is hopeless
for discriminants like 421 whose fundamental units are astronomically
large.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError
from .forms import QuadForm, Unimodular, act_quadratic, is_square_int, validate_shape
from .quadirr import QuadIrr


@dataclass(frozen=True)
class PellData:
    D: int
    u0: int
    w0: int

    def __post_init__(self):
        assert self.u0 > 0 and self.w0 > 0
        assert self.u0 * self.u0 - self.D * self.w0 * self.w0 == 4

    @property
    def eps(self) -> QuadIrr:
        """(u0 + w0*sqrt(D)) / 2, the minimal unit > 1 of norm one."""
        return QuadIrr(Fraction(self.u0, 2), Fraction(self.w0, 2), self.D)


def pell_one(D: int) -> tuple[int, int]:
    """Minimal positive solution of x^2 - D*y^2 = 1 (continued fractions)."""
    if D <= 0 or is_square_int(D):
        raise InputError("pell_one needs a positive non-square D")
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def pell_fundamental(D: int) -> PellData:
    """Minimal positive solution of u^2 - D*w^2 = 4."""
    if D <= 0 or is_square_int(D):
        raise InputError("pell_fundamental needs a positive non-square D")
    if D % 4 == 0:
        # u is forced even, so u = 2x with x^2 - (D/4) w^2 = 1 directly
        x1, y1 = pell_one(D // 4)
        return PellData(D, 2 * x1, y1)
    x1, y1 = pell_one(D)
    # Any solution below (2x1, 2y1) is a half-integral unit whose cube is
    # x1 + y1*sqrt(D); writing it (u + w*sqrt(D))/2 forces u^3 - 3u = 2*x1,
    # so u is pinned by an integer cube root.
    u0 = _icbrt(2 * x1)
    for u in range(max(u0 - 2, 1), u0 + 3):
        if u**3 - 3 * u == 2 * x1:
            ww, rem = divmod(u * u - 4, D)
            if rem == 0:
                w = isqrt(ww)
                if w * w == ww and w > 0:
                    return PellData(D, u, w)
    return PellData(D, 2 * x1, 2 * y1)


def _icbrt(n: int) -> int:
    if n <= 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def pell_matrix(q: QuadForm, u: int, w: int) -> Unimodular:
    """The symmetry M(u, w) of q attached to a solution of u^2 - D*w^2 = 4."""
    if (u + q.s * w) % 2:
        raise InputError("u, w have incompatible parity for this form")
    return Unimodular((u + q.s * w) // 2, -q.r * w, q.t * w, (u - q.s * w) // 2)


@dataclass(frozen=True)
class SymmetryGroup:
    """Integral determinant-one symmetries of a shape.

    order / cube_order are None for indefinite non-square discriminants
    (infinite group).  generator generates the group modulo nothing for the
    finite cases and generates it together with -1 in the indefinite case.
    cube_generator generates the subgroup of cubes (acting on lattice
    points), whose order is cube_order in the finite cases.
    """

    shape: QuadForm
    order: int | None
    generator: Unimodular
    cube_order: int | None
    cube_generator: Unimodular
    pell: PellData | None = None


def symmetry_group(q: QuadForm) -> SymmetryGroup:
    validate_shape(q)
    D = q.disc
    if D < 0:
        if D == -3:
            gen = pell_matrix(q, 1, 1)  # order 6
            return SymmetryGroup(q, 6, gen, 2, gen.power(3))
        if D == -4:
            gen = pell_matrix(q, 0, 1)  # order 4; cubes give the whole group
            return SymmetryGroup(q, 4, gen, 4, gen.power(3))
        gen = pell_matrix(q, -2, 0)  # -identity
        return SymmetryGroup(q, 2, gen, 2, gen)
    if is_square_int(D):
        gen = pell_matrix(q, -2, 0)
        return SymmetryGroup(q, 2, gen, 2, gen)
    pd = pell_fundamental(D)
    gen = pell_matrix(q, pd.u0, pd.w0)
    assert act_quadratic(gen, q) == q
    return SymmetryGroup(q, None, gen, None, gen.power(3), pd)
