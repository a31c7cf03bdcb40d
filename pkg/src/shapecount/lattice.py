"""The coefficient lattice attached to a shape and its point <-> cubic-form
dictionary.

For a primitive shape Q = (r, s, t) with r*t != 0 and non-square
discriminant, the lattice is

    L(Q) = {(b, c) : s*b = r*c (mod 3t),  s*c = t*b (mod 3r)},

and (b, c) in L(Q) corresponds to the integral cubic form

    f = ((s*b - r*c)/(3t)) x^3 + b x^2 y + c x y^2 + ((s*c - t*b)/(3r)) y^3

whose Hessian is n*Q with n = Q'(b, c)/(r*t), Q' the adjoint.  The ring
discriminant is -n^2 D / 3.  The covolume of L(Q) is 3^alpha * |r*t| with
alpha = 1 if 3 | D, else 2.

For square discriminant D = m^2 the shape is first put into the reduced
slot (r, m, 0); the lattice lives in the outer coefficients,

    L(Q) = {(a, d) : 3d = 0 (mod D)},    f = (a, r^2 e, r m e, d),  e = 3d/D,

with n = 9 d (r^3 d - m^3 a) / D^2 and the same discriminant rule.  Its
covolume is D / 3^alpha with alpha = 1 if 3 | D else 0.

Orbits of the cubic action (cubes of the symmetry group acting on column
vectors) on the positive cone {n > 0} classify the oriented rings of shape
Q; `is_fundamental_rep` picks one point per orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import InputError
from .forms import CubicForm, QuadForm, Unimodular, is_square_int, validate_shape
from .intutil import count_in_ap, crt, solve_linear_congruence
from .pell import SymmetryGroup, symmetry_group
from .quadirr import QuadIrr
from .reduction import square_canonical

NONSQUARE = "nonsquare"
SQUARE = "square"


@dataclass(frozen=True)
class ShapeLattice:
    shape: QuadForm
    kind: str
    basis: tuple[tuple[int, int], tuple[int, int]]
    covolume: int
    alpha: int

    # -- membership -----------------------------------------------------

    def contains(self, x: int, y: int) -> bool:
        r, s, t = self.shape.coeffs()
        if self.kind == NONSQUARE:
            return (s * x - r * y) % (3 * t) == 0 and (s * y - t * x) % (3 * r) == 0
        return (3 * y) % self.shape.disc == 0

    def congruence_text(self) -> str:
        r, s, t = self.shape.coeffs()
        if self.kind == NONSQUARE:
            return f"{s}b = {r}c (mod {3 * t}) and {s}c = {t}b (mod {3 * r})"
        return f"3d = 0 (mod {self.shape.disc})"

    # -- solving the congruences row by row ------------------------------

    def row_second(self, x: int) -> tuple[int, int] | None:
        """AP of valid second coordinates for fixed first coordinate."""
        r, s, t = self.shape.coeffs()
        if self.kind == NONSQUARE:
            a1 = solve_linear_congruence(r, s * x, 3 * t)
            a2 = solve_linear_congruence(s, t * x, 3 * r)
            if a1 is None or a2 is None:
                return None
            return crt(a1[0], a1[1], a2[0], a2[1])
        q = self.shape.disc // gcd(3, self.shape.disc)
        return (0, q)

    def row_first(self, y: int) -> tuple[int, int] | None:
        """AP of valid first coordinates for fixed second coordinate."""
        r, s, t = self.shape.coeffs()
        if self.kind == NONSQUARE:
            a1 = solve_linear_congruence(s, r * y, 3 * t)
            a2 = solve_linear_congruence(t, s * y, 3 * r)
            if a1 is None or a2 is None:
                return None
            return crt(a1[0], a1[1], a2[0], a2[1])
        if (3 * y) % self.shape.disc:
            return None
        return (0, 1)

    # -- points ----------------------------------------------------------

    def point(self, x: int, y: int) -> "ShapePoint":
        if not self.contains(x, y):
            raise InputError(f"({x}, {y}) is not in {self.congruence_text()}")
        r, s, t = self.shape.coeffs()
        D = self.shape.disc
        if self.kind == NONSQUARE:
            qp = self.shape.adjoint()(x, y)
            n, rem = divmod(qp, r * t)
            if rem:
                raise InputError("adjoint value not divisible by r*t")
        else:
            num = 9 * y * (r**3 * y - s**3 * x)
            n, rem = divmod(num, D * D)
            assert rem == 0
        dd, rem = divmod(-n * n * D, 3)
        assert rem == 0
        return ShapePoint(self, x, y, n, dd)

    def form(self, x: int, y: int) -> CubicForm:
        return point_to_form(self.point(x, y))


@dataclass(frozen=True)
class ShapePoint:
    lattice: ShapeLattice
    x: int
    y: int
    n: int
    ring_disc: int

    @property
    def in_plus_cone(self) -> bool:
        return self.n > 0

    def coords(self) -> tuple[int, int]:
        return (self.x, self.y)


def shape_lattice(q: QuadForm) -> ShapeLattice:
    """Build L(Q); q must already be in a usable slot (see normalize_shape)."""
    validate_shape(q)
    D = q.disc
    if D == 0:
        raise InputError("degenerate shape")
    if is_square_int(D) and D > 0:
        m = isqrt(D)
        if q.t != 0 or q.s != m or not (0 <= q.r < m + (m == 1)):
            raise InputError("square-discriminant shape must be the reduced (r, m, 0)")
        alpha = 1 if D % 3 == 0 else 0
        cov = D // (3 if D % 3 == 0 else 1)
        return ShapeLattice(q, SQUARE, ((1, 0), (0, cov)), cov, alpha)
    if q.r == 0 or q.t == 0:
        raise InputError("outer coefficients must be nonzero for non-square shapes")
    alpha = 1 if D % 3 == 0 else 2
    basis, cov = _hnf_basis(q)
    assert cov == 3**alpha * abs(q.r * q.t), (q, cov)
    return ShapeLattice(q, NONSQUARE, basis, cov, alpha)


def _hnf_basis(q: QuadForm) -> tuple[tuple[tuple[int, int], tuple[int, int]], int]:
    """Upper-triangular basis ((m1, 0), (h, m2)) of the coefficient lattice."""
    r, s, t = q.coeffs()
    a1 = solve_linear_congruence(s, 0, 3 * t)
    a2 = solve_linear_congruence(t, 0, 3 * r)
    both = crt(a1[0], a1[1], a2[0], a2[1])
    m1 = both[1]  # minimal positive first coordinate on the axis
    lat = ShapeLattice(q, NONSQUARE, ((1, 0), (0, 1)), 1, 0)  # membership helper only
    y = 1
    while True:
        ap = lat.row_first(y)
        if ap is not None:
            # (m1, 0) is in the lattice, so any valid x may be reduced mod m1
            return ((m1, 0), (ap[0] % m1, y)), m1 * y
        y += 1


def point_to_form(p: ShapePoint) -> CubicForm:
    lat = p.lattice
    r, s, t = lat.shape.coeffs()
    if lat.kind == NONSQUARE:
        a, rem = divmod(s * p.x - r * p.y, 3 * t)
        assert rem == 0
        d, rem = divmod(s * p.y - t * p.x, 3 * r)
        assert rem == 0
        return CubicForm(a, p.x, p.y, d)
    e, rem = divmod(3 * p.y, lat.shape.disc)
    assert rem == 0
    return CubicForm(p.x, r * r * e, r * s * e, p.y)


def form_to_point(q_or_lattice, f: CubicForm) -> ShapePoint:
    """Inverse of point_to_form; fails if the Hessian of f is not a multiple
    of the shape."""
    lat = q_or_lattice if isinstance(q_or_lattice, ShapeLattice) else shape_lattice(q_or_lattice)
    h = f.hessian()
    n = _proportionality(h, lat.shape)
    if n is None:
        raise InputError(f"hessian {h} is not an integer multiple of {lat.shape}")
    if lat.kind == NONSQUARE:
        p = lat.point(f.b, f.c)
    else:
        p = lat.point(f.a, f.d)
    assert p.n == n and point_to_form(p) == f
    return p


def _proportionality(h: QuadForm, q: QuadForm) -> int | None:
    for hv, qv in ((h.r, q.r), (h.s, q.s), (h.t, q.t)):
        if qv != 0:
            if hv % qv:
                return None
            n = hv // qv
            break
    else:
        return None
    if n == 0:
        return None
    if (h.r, h.s, h.t) != (n * q.r, n * q.s, n * q.t):
        return None
    return n


def shape_of_cubic(f: CubicForm) -> tuple[QuadForm, int]:
    """Canonical shape class of the ring of f, and the Hessian multiplier n.

    The Hessian equals n times a primitive form with n = content > 0; the
    canonical representative of that form's class is returned.
    """
    if f.disc == 0:
        raise InputError("zero discriminant")
    n, prim = f.hessian().content_primitive()
    if prim.is_negative_definite():
        raise AssertionError("hessian cannot be negative definite for nonzero disc")
    if prim.disc > 0 and is_square_int(prim.disc):
        return square_canonical(prim)[0], n
    from .reduction import canonical_form

    return canonical_form(prim), n


# ---------------------------------------------------------------------------
# fundamental-domain representatives for the cubic action


@dataclass(frozen=True)
class SectorTest:
    """Exact membership test for the cubic-action sector of an indefinite
    shape (r, t > 0): xi > 0, 1 <= eta/xi < eps^6 where xi = x - theta*y,
    eta = x - theta'*y, theta = (s + sqrt(D))/(2t)."""

    D: int
    s: int
    t: int
    bound: QuadIrr  # eps^6

    @classmethod
    def for_shape(cls, q: QuadForm, sym: SymmetryGroup) -> "SectorTest":
        eps = sym.pell.eps
        e2 = eps * eps
        return cls(q.disc, q.s, q.t, e2 * e2 * e2)

    def xi(self, x: int, y: int) -> QuadIrr:
        return QuadIrr(Fraction(2 * self.t * x - self.s * y, 2 * self.t), Fraction(-y, 2 * self.t), self.D)

    def eta(self, x: int, y: int) -> QuadIrr:
        return QuadIrr(Fraction(2 * self.t * x - self.s * y, 2 * self.t), Fraction(y, 2 * self.t), self.D)

    def contains(self, x: int, y: int) -> bool:
        if y < 0:  # eta/xi >= 1 is exactly y >= 0 when xi > 0
            return False
        xi = self.xi(x, y)
        if xi.sign() <= 0:
            return False
        return (self.bound * xi - self.eta(x, y)).sign() > 0


def cubic_orbit(p: ShapePoint, sym: SymmetryGroup) -> list[tuple[int, int]]:
    """The (finite) cubic-action orbit of a point; definite shapes only."""
    assert sym.cube_order is not None
    out = []
    v = p.coords()
    for _ in range(sym.cube_order):
        out.append(v)
        v = sym.cube_generator.vec(v)
    assert v == p.coords()
    return out


def is_fundamental_rep(p: ShapePoint, sym: SymmetryGroup | None = None) -> bool:
    """One chosen point per cubic-action orbit in the positive cone.

    Definite: lexicographically least point of the (finite) orbit.
    Indefinite: membership in the half-open sector of the cubic action,
    tested exactly.  Square discriminant: second coordinate positive.
    """
    if not p.in_plus_cone:
        raise InputError("fundamental representatives live in the positive cone")
    lat = p.lattice
    if lat.kind == SQUARE:
        return p.y > 0
    if sym is None:
        sym = symmetry_group(lat.shape)
    if lat.shape.disc < 0:
        return p.coords() == min(cubic_orbit(p, sym))
    if lat.shape.r <= 0 or lat.shape.t <= 0:
        raise InputError("indefinite shape must be normalized (r, t > 0)")
    return SectorTest.for_shape(lat.shape, sym).contains(p.x, p.y)
