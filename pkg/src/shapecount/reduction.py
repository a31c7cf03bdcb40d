"""Reduction theory for binary quadratic forms: canonical representatives
under the determinant-one action, class groups by enumeration, ambiguity
tests, and the normalizations the counting code needs.

Three regimes:

* negative discriminant: classical Gauss reduction of positive definite
  forms to the unique reduced triple -r < s <= r <= t (s >= 0 on the
  boundary r == t);
* positive non-square discriminant: reduction to the cycle of reduced
  forms; canonical representative = lexicographically least member of the
  cycle;
* square discriminant: every primitive form is equivalent to exactly one
  r*x^2 + s*x*y with s = sqrt(D) and 0 <= r < s (for D = 1 this is x*y).
  The representative is reached by moving a rational zero of the form to
  the second basis vector.

Class numbers count determinant-one classes, so for positive discriminant
they are narrow class numbers; for negative discriminant only positive
definite forms are counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InputError
from .forms import QuadForm, Unimodular, act_quadratic, is_square_int, validate_shape


@dataclass(frozen=True)
class ClassGroupData:
    D: int
    h: int
    reps: tuple[QuadForm, ...]


def _translation(k: int) -> Unimodular:
    """(x, y) -> (x + k*y, y): keeps r, sends s to s + 2rk and t to Q(k, 1)."""
    return Unimodular(1, 0, k, 1)


def _shear(k: int) -> Unimodular:
    """(x, y) -> (x, k*x + y): keeps t, sends r to Q(1, k)."""
    return Unimodular(1, k, 0, 1)


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


def _complete_row(u: int, v: int) -> tuple[int, int]:
    """(x0, y0) with det ((x0, y0), (u, v)) = x0*v - y0*u = 1, for coprime u, v."""
    g, a, b = _xgcd(u, v)
    if g != 1:
        raise InputError(f"({u}, {v}) is not primitive")
    # u*a + v*b = 1  ->  x0 = b, y0 = -a
    return (b, -a)


# ---------------------------------------------------------------------------
# negative discriminant

def reduce_positive_definite(q: QuadForm) -> QuadForm:
    if not q.is_positive_definite():
        raise InputError(f"{q} is not positive definite")
    r, s, t = q.coeffs()
    while True:
        if t < r:
            r, s, t = t, -s, r
            continue
        if not (-r < s <= r):
            sp = (s + r) % (2 * r) - r  # into [-r, r)
            k = (sp - s) // (2 * r)
            t = r * k * k + s * k + t
            s = sp
            if s == -r:
                s = r  # (r, -r, t) ~ (r, r, t); prefer the positive boundary
            continue
        break
    if r == t and s < 0:
        s = -s
    return QuadForm(r, s, t)


def _reduced_posdef_list(D: int) -> list[QuadForm]:
    out = []
    for r in range(1, isqrt(abs(D) // 3) + 1):
        for s in range(-r + 1, r + 1):
            if (s * s - D) % (4 * r):
                continue
            t = (s * s - D) // (4 * r)
            if t < r:
                continue
            if s < 0 and r == t:
                continue
            q = QuadForm(r, s, t)
            if q.is_primitive():
                out.append(q)
    return sorted(out, key=QuadForm.coeffs)


# ---------------------------------------------------------------------------
# positive non-square discriminant

def _is_reduced_indef(r: int, s: int, t: int, D: int) -> bool:
    if s <= 0 or s * s >= D:
        return False
    a2 = 2 * abs(r)
    # sqrt(D) - s < 2|r| < sqrt(D) + s, by squaring
    if D >= (a2 + s) * (a2 + s):
        return False
    if a2 > s and (a2 - s) * (a2 - s) >= D:
        return False
    return True


def _rho_step(r: int, s: int, t: int, D: int) -> tuple[tuple[int, int, int], Unimodular]:
    """One reduction step (r, s, t) -> (t, s', (s'^2 - D)/(4t))."""
    a = abs(t)
    sq = isqrt(D)
    sp = (-s) % (2 * a)
    if a > sq:  # pull s' into (-|t|, |t|]
        if sp > a:
            sp -= 2 * a
    else:  # pull s' into (sq - 2|t|, sq]
        sp += ((sq - sp) // (2 * a)) * (2 * a)
    tp = (sp * sp - D) // (4 * t)
    k = -(sp + s) // (2 * t)
    return (t, sp, tp), Unimodular(0, -1, 1, k)


def _reduce_indefinite(q: QuadForm) -> tuple[QuadForm, Unimodular]:
    D = q.disc
    cur = q.coeffs()
    g = Unimodular.identity()
    for _ in range(100_000):
        if _is_reduced_indef(*cur, D):
            return QuadForm(*cur), g
        cur, step = _rho_step(*cur, D)
        g = step @ g
    raise RuntimeError("indefinite reduction did not terminate")


def _cycle_with_transforms(q0: QuadForm) -> list[tuple[QuadForm, Unimodular]]:
    """The reduced cycle through reduced q0, with maps q0 -> member."""
    D = q0.disc
    out = [(q0, Unimodular.identity())]
    cur, g = q0.coeffs(), Unimodular.identity()
    for _ in range(1_000_000):
        cur, step = _rho_step(*cur, D)
        g = step @ g
        if QuadForm(*cur) == q0:
            return out
        out.append((QuadForm(*cur), g))
    raise RuntimeError("reduced cycle did not close")


def reduced_cycle(q: QuadForm) -> list[QuadForm]:
    q0, _ = _reduce_indefinite(q)
    return [f for f, _ in _cycle_with_transforms(q0)]


# ---------------------------------------------------------------------------
# square discriminant

def _primitive_zero(q: QuadForm) -> tuple[int, int]:
    """A primitive integer zero of a primitive form of square discriminant."""
    r, s, _t = q.coeffs()
    if r == 0:
        return (1, 0)
    m = isqrt(q.disc)
    num, den = -s + m, 2 * r  # zero at x/y = (-s + m)/(2r)
    g = gcd(abs(num), abs(den))
    return (num // g, den // g)


def square_canonical(q: QuadForm) -> tuple[QuadForm, Unimodular]:
    """Canonical (r, sqrt(D), 0) representative for square discriminant D >= 1.

    Returns (rep, g) with act_quadratic(g, q) == rep.
    """
    D = q.disc
    if D <= 0 or not is_square_int(D):
        raise InputError("square_canonical needs a positive square discriminant")
    validate_shape(q)
    m = isqrt(D)
    u, v = _primitive_zero(q)
    x0, y0 = _complete_row(u, v)
    g = Unimodular(x0, y0, u, v)
    cur = act_quadratic(g, q)
    assert cur.t == 0 and abs(cur.s) == m
    if cur.s < 0:
        # zeros of r*x^2 - m*x*y are (0, 1) and (m, r); moving the latter
        # to the second row flips the sign of s
        x1, y1 = _complete_row(m, cur.r)
        step = Unimodular(x1, y1, m, cur.r)
        g = step @ g
        cur = act_quadratic(g, q)
        assert cur.t == 0 and cur.s == m
    k = -(cur.r // m)
    if k:
        g = _shear(k) @ g
        cur = act_quadratic(g, q)
    assert cur.t == 0 and cur.s == m and 0 <= cur.r < m + (m == 1)
    assert act_quadratic(g, q) == cur
    return cur, g


# ---------------------------------------------------------------------------
# public interface

def canonical_form(q: QuadForm) -> QuadForm:
    """Canonical representative of the determinant-one class of q.

    Non-square discriminants only; square discriminants go through
    square_canonical.  Two primitive forms are equivalent iff their
    canonical representatives coincide.
    """
    D = q.disc
    if D == 0 or is_square_int(D):
        raise InputError("canonical_form needs a non-square discriminant")
    if not q.is_primitive():
        raise InputError("canonical_form needs a primitive form")
    if D < 0:
        if q.is_negative_definite():
            raise InputError("negative definite forms unsupported")
        return reduce_positive_definite(q)
    return min(reduced_cycle(q), key=QuadForm.coeffs)


def is_ambiguous(q: QuadForm) -> bool:
    """True iff q and (r, -s, t) lie in the same determinant-one class."""
    flip = QuadForm(q.r, -q.s, q.t)
    if q.disc > 0 and is_square_int(q.disc):
        return square_canonical(q)[0] == square_canonical(flip)[0]
    return canonical_form(q) == canonical_form(flip)


def class_group(D: int) -> ClassGroupData:
    """All determinant-one classes of primitive forms of discriminant D."""
    if D % 4 not in (0, 1):
        raise InputError("discriminant must be 0 or 1 mod 4")
    if D == 0 or is_square_int(D):
        raise InputError("class_group needs a non-square discriminant")
    if D < 0:
        reps = _reduced_posdef_list(D)
        return ClassGroupData(D, len(reps), tuple(reps))
    reduced = set()
    for s in range(1, isqrt(D) + 1):
        if (D - s * s) % 4:
            continue
        m = (s * s - D) // 4  # r*t, negative
        for r in _signed_divisors(m):
            t = m // r
            if _is_reduced_indef(r, s, t, D) and gcd(gcd(abs(r), s), abs(t)) == 1:
                reduced.add((r, s, t))
    cycle_reps = []
    seen: set[tuple[int, int, int]] = set()
    for f in sorted(reduced):
        if f in seen:
            continue
        cyc = []
        cur = f
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = _rho_step(*cur, D)[0]
        cycle_reps.append(min(cyc))
    reps = tuple(QuadForm(*c) for c in sorted(cycle_reps))
    return ClassGroupData(D, len(reps), reps)


def _signed_divisors(m: int) -> list[int]:
    out = []
    n = abs(m)
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.extend((i, -i))
            if i != n // i:
                out.extend((n // i, -(n // i)))
        i += 1
    return out


def normalize_shape(q: QuadForm) -> tuple[QuadForm, Unimodular]:
    """Equivalent representative the lattice machinery can use directly.

    Positive definite forms are kept as given; indefinite non-square forms
    move to a representative with r > 0 and t > 0; square discriminants go
    to the canonical (r, sqrt(D), 0).  Returns (rep, g) with
    act_quadratic(g, q) == rep.
    """
    validate_shape(q)
    D = q.disc
    if D < 0:
        return q, Unimodular.identity()
    if is_square_int(D):
        return square_canonical(q)
    red, g = _reduce_indefinite(q)
    best = None
    for f, step in _cycle_with_transforms(red):
        if f.r > 0 and (best is None or f.coeffs() < best[0].coeffs()):
            best = (f, step @ g)
    assert best is not None  # outer coefficients alternate in sign around the cycle
    f, g = best
    k = 0  # minimal |k| with Q(k, 1) > 0, ties towards positive k
    while f(k, 1) <= 0:
        k = -k + 1 if k <= 0 else -k
    g = _translation(k) @ g
    f = act_quadratic(_translation(k), f)
    assert f.r > 0 and f.t > 0 and act_quadratic(g, q) == f
    return f, g
