"""Exact enumeration of fundamental-domain lattice points of bounded ring
discriminant, with irreducibility and maximality filters, plus the
square-discriminant field counts and their independent oracle.

Regions (all inequalities pre-squared, strict bound |disc| < X):

* definite shape (disc D < 0): adjoint value Q'(b, c) runs to
  Qmax = max{q : q^2 |D| < 3 r^2 t^2 X}; the raw point count divides by the
  cube-subgroup order of the symmetry group;
* indefinite shape (r, t > 0): same Qmax, but points are counted inside the
  half-open sector {xi > 0, 1 <= eta/xi < eps^6}, an exact fundamental
  domain for the cubic action;
* square discriminant (reduced (r, m, 0)): u = d*(r^3 d - m^3 a) runs over
  [1, Numax], Numax = max{u : 27 u^2 < D^3 X}, one representative per
  +-pair via d > 0.

Two engines: `fast` counts rows by arithmetic-progression arithmetic and
materializes points only when a filter needs them; `naive` scans a bounding
box and applies the exact per-point predicates.  Both must agree exactly.
Row work is chunked with a fixed chunk size and combined in chunk order, so
results are identical for any thread count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import InputError, RangeError
from .forms import CubicForm, QuadForm, is_irreducible_cubic, is_square_int
from .intutil import (
    ceil_sub_sqrt,
    count_in_ap,
    factorize,
    first_in_ap,
    floor_add_sqrt,
    max_square_below,
    primes_up_to,
    smallest_prime_factors,
    squarefree_flags,
)
from .lattice import NONSQUARE, SQUARE, SectorTest, is_fundamental_rep, point_to_form, shape_lattice
from .maximality import EXACT_SIEVE, SieveConfig, is_maximal_at, is_maximal_pure
from .pell import SymmetryGroup, symmetry_group
from .quadirr import QuadIrr
from .reduction import is_ambiguous, normalize_shape

FILTERS = ("none", "irreducible", "maximal")
_CERT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)
_ROWS_PER_CHUNK = 64
_INT64_GUARD = 2**62


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SHAPECOUNT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RegionSpec:
    """Exact integer description of one bounded-discriminant region."""

    shape: QuadForm            # normalized representative used for counting
    input_shape: QuadForm
    kind: str
    X: int
    bound: int                 # Qmax (non-square) or Numax (square)
    lattice: "object"
    sym: SymmetryGroup
    sector: SectorTest | None


def region_for(shape: QuadForm, X: int) -> RegionSpec:
    if X < 1:
        raise InputError("X must be a positive integer")
    norm, _ = normalize_shape(shape)
    lat = shape_lattice(norm)
    sym = symmetry_group(norm)
    D = norm.disc
    if lat.kind == SQUARE:
        bound = max_square_below(D**3 * X, 27)
        sector = None
    else:
        r, _, t = norm.coeffs()
        bound = max_square_below(3 * r * r * t * t * X, abs(D))
        sector = SectorTest.for_shape(norm, sym) if D > 0 else None
    reg = RegionSpec(norm, shape, lat.kind, X, bound, lat, sym, sector)
    _range_guard(reg)
    return reg


def _caps(reg: RegionSpec) -> tuple[int, int]:
    """Safe upper bounds for |x| and |y| over all counted points."""
    q = reg.shape
    r, s, t = q.coeffs()
    D = q.disc
    if reg.bound < 1:
        return (1, 1)
    if reg.kind == SQUARE:
        ycap = reg.bound
        xcap = (r**3 * reg.bound + reg.bound) // s**3 + 2
        return (xcap, ycap)
    if D < 0:
        return (isqrt(4 * r * reg.bound // abs(D)) + 2, isqrt(4 * t * reg.bound // abs(D)) + 2)
    bup = reg.sector.bound.p + reg.sector.bound.q * (isqrt(D) + 1)
    yv = bup * t * reg.bound / D
    ycap = isqrt(yv.numerator // yv.denominator) + 2
    xcap = floor_add_sqrt(s * ycap, D * ycap * ycap + 4 * t * reg.bound, 2 * t) + 2
    return (xcap, ycap)


def _range_guard(reg: RegionSpec) -> None:
    """Everything the vectorized paths compute must stay inside int64."""
    xcap, ycap = _caps(reg)
    r, s, t = (abs(v) for v in reg.shape.coeffs())
    worst = max(
        t * xcap * xcap + s * xcap * ycap + r * ycap * ycap,
        9 * reg.bound,
        (reg.bound + 1) * abs(reg.shape.disc),
        reg.X,
    )
    if worst >= _INT64_GUARD:
        raise RangeError("region exceeds the supported 64-bit counting range")


@dataclass
class CountReport:
    shape: tuple[int, int, int]
    normalized: tuple[int, int, int]
    disc: int
    kind: str
    X: int
    filter: str
    engine: str
    gamma: int
    points_total: int
    points_irreducible: int | None
    points_maximal: int | None
    n3_oriented: int
    n3: Fraction
    m3_oriented: int | None
    m3: Fraction | None
    audit: bool
    audit_failures: int
    threads: int
    seconds: float

    def to_json_dict(self) -> dict:
        def enc(v):
            if v is None:
                return None
            if isinstance(v, (int, Fraction)):
                return str(v)
            return v

        d = {k: enc(v) for k, v in self.__dict__.items()}
        d["shape"] = list(self.shape)
        d["normalized"] = list(self.normalized)
        d["kind"] = self.kind
        d["filter"] = self.filter
        d["engine"] = self.engine
        d["gamma"] = self.gamma
        d["audit"] = self.audit
        d["audit_failures"] = self.audit_failures
        d["threads"] = self.threads
        d["seconds"] = self.seconds
        return d


# ---------------------------------------------------------------------------
# row descriptions

def _rows_definite(reg: RegionSpec):
    q = reg.shape
    r, s, _t = q.coeffs()
    D = q.disc
    if reg.bound < 1:
        return
    bmax = isqrt(4 * r * reg.bound // abs(D))
    for b in range(-bmax, bmax + 1):
        rad = D * b * b + 4 * r * reg.bound
        if rad < 0:
            continue
        ap = reg.lattice.row_second(b)
        if ap is None:
            continue
        clo = ceil_sub_sqrt(s * b, rad, 2 * r)
        chi = floor_add_sqrt(s * b, rad, 2 * r)
        if clo <= chi:
            yield (b, clo, chi, ap)


def _indefinite_ymax(reg: RegionSpec) -> int:
    bup = reg.sector.bound.p + reg.sector.bound.q * (isqrt(reg.shape.disc) + 1)
    yv = bup * reg.shape.t * reg.bound / reg.shape.disc
    return isqrt(yv.numerator // yv.denominator) + 2


def _rows_indefinite(reg: RegionSpec):
    q = reg.shape
    r, s, t = q.coeffs()
    D = q.disc
    if reg.bound < 1:
        return
    sec = reg.sector
    theta = QuadIrr(Fraction(s, 2 * t), Fraction(1, 2 * t), D)
    slope = (sec.bound * theta - theta.conjugate()) / (sec.bound - 1)
    for y in range(0, _indefinite_ymax(reg) + 1):
        rad = D * y * y + 4 * t * reg.bound
        xhi = floor_add_sqrt(s * y, rad, 2 * t)
        xlo = 1 if y == 0 else (slope * y).floor() + 1
        if xlo > xhi:
            continue
        ap = reg.lattice.row_first(y)
        if ap is None:
            continue
        yield (y, xlo, xhi, ap)


def _rows_square(reg: RegionSpec):
    """Rows are d values; the inner variable is w = r^3 d - m^3 a in [1, bound/d]."""
    q = reg.shape
    D = q.disc
    step = D // gcd(3, D)
    s3 = q.s**3
    d = step
    while d <= reg.bound:
        yield (d, 1, reg.bound // d, ((q.r**3 * d) % s3, s3))
        d += step


def _rows(reg: RegionSpec):
    if reg.kind == SQUARE:
        return _rows_square(reg)
    if reg.shape.disc < 0:
        return _rows_definite(reg)
    return _rows_indefinite(reg)


# ---------------------------------------------------------------------------
# fast engine

@dataclass
class _StageCounts:
    total: int = 0
    irreducible: int = 0
    maximal: int = 0
    audit_failures: int = 0
    dump: list[str] = field(default_factory=list)

    def add(self, other: "_StageCounts"):
        self.total += other.total
        self.irreducible += other.irreducible
        self.maximal += other.maximal
        self.audit_failures += other.audit_failures
        self.dump.extend(other.dump)


def _row_points(reg: RegionSpec, row) -> tuple[np.ndarray, np.ndarray]:
    if reg.kind == SQUARE:
        d, wlo, whi, (res, mod) = row
        w0 = first_in_ap(wlo, res, mod)
        ws = np.arange(w0, whi + 1, mod, dtype=np.int64)
        a = (reg.shape.r**3 * d - ws) // reg.shape.s**3
        return a, np.full_like(a, d)
    first, lo, hi, (res, mod) = row
    v0 = first_in_ap(lo, res, mod)
    vs = np.arange(v0, hi + 1, mod, dtype=np.int64)
    if reg.shape.disc < 0:
        # definite rows iterate the first coordinate, the progression is in c
        xs, ys = np.full_like(vs, first), vs
        if first == 0:
            keep = ys != 0  # drop the origin
            return xs[keep], ys[keep]
        return xs, ys
    # indefinite rows iterate the second coordinate, the progression is in x
    return vs, np.full_like(vs, first)


def _point_data(reg: RegionSpec, xs: np.ndarray, ys: np.ndarray):
    r, s, t = reg.shape.coeffs()
    D = reg.shape.disc
    if reg.kind == SQUARE:
        e = 3 * ys // D
        coeffs = (xs, r * r * e, r * s * e, ys)
        n = 9 * ys * (r**3 * ys - s**3 * xs) // (D * D)
    else:
        a = (s * xs - r * ys) // (3 * t)
        d = (s * ys - t * xs) // (3 * r)
        coeffs = (a, xs, ys, d)
        n = (t * xs * xs - s * xs * ys + r * ys * ys) // (r * t)
    disc = -(n * n * D) // 3
    return coeffs, n, disc


def _count_row_only(reg: RegionSpec, row) -> int:
    first, lo, hi, (res, mod) = row
    cnt = count_in_ap(lo, hi, res, mod)
    if reg.kind == NONSQUARE and reg.shape.disc < 0 and first == 0 and lo <= 0 <= hi and res % mod == 0:
        cnt -= 1  # the origin
    return cnt


def _irreducible_candidates(coeffs) -> np.ndarray:
    """True where the point might be reducible; False is a proof of
    irreducibility (no projective root modulo one of the certificate
    primes, while any rational linear factor reduces mod every prime)."""
    a, b, c, d = coeffs
    cand = np.ones(a.shape, dtype=bool)
    for p in _CERT_PRIMES:
        if not cand.any():
            break
        ap, bp, cp, dp = a % p, b % p, c % p, d % p
        has_root = ap == 0
        for u in range(p):
            fv = (((ap * u + bp) * u + cp) * u + dp) % p
            has_root = has_root | (fv == 0)
        cand &= has_root
    return cand


class _MaxTester:
    """Maximality over many points of one region.

    Only primes with p^2 | disc matter; disc = -n^2 D / 3, so they divide n
    or D.  n is factored through a smallest-prime-factor table when the
    region is small enough, trial division otherwise.
    """

    def __init__(self, reg: RegionSpec, sieve: SieveConfig):
        self.reg = reg
        self.sieve = sieve
        self.disc_primes = set(factorize(abs(reg.shape.disc)).keys()) | {3}
        if reg.kind == SQUARE:
            nmax = 9 * reg.bound
            self.sf = squarefree_flags(max(reg.bound, 1))
        else:
            nmax = reg.bound // abs(reg.shape.r * reg.shape.t) + 1
            self.sf = None
        self.spf = smallest_prime_factors(nmax) if 1 <= nmax <= 10**7 else None
        self.trunc_primes = primes_up_to(sieve.bound) if sieve.mode == "truncated" else None

    def _primes_of(self, n: int):
        n = abs(n)
        if self.spf is not None and n < len(self.spf):
            out = set()
            while n > 1:
                p = int(self.spf[n])
                out.add(p)
                while n % p == 0:
                    n //= p
            return out
        return set(factorize(n).keys())

    def __call__(self, f: CubicForm, n: int) -> bool:
        disc = f.disc
        if self.sieve.mode == "truncated":
            return all(
                is_maximal_at(f, p) for p in self.trunc_primes if disc % (p * p) == 0
            )
        for p in sorted(self._primes_of(n) | self.disc_primes):
            if disc % (p * p) == 0 and not is_maximal_at(f, p):
                return False
        return True


def _pure_max_flags(reg: RegionSpec, tester: _MaxTester, xs, ys) -> np.ndarray:
    D = reg.shape.disc
    if D == 1:
        aa, dd = np.abs(xs), ys.copy()
        extra = (aa * aa - dd * dd) % 9 != 0
    else:
        dd = ys // 3
        aa = reg.shape.r**3 * dd - 9 * xs
        extra = np.ones(aa.shape, dtype=bool)
    sf = tester.sf
    flags = extra & sf[aa] & sf[dd]
    for i in np.flatnonzero(flags):
        if gcd(int(aa[i]), int(dd[i])) != 1:
            flags[i] = False
    return flags


def _audit_points(reg: RegionSpec, xs, ys, coeffs, n, disc) -> int:
    bad = 0
    lat = reg.lattice
    q = reg.shape
    r, s, t = q.coeffs()
    D = q.disc
    for i in range(xs.size):
        x, y = int(xs[i]), int(ys[i])
        f = CubicForm(*(int(cc[i]) for cc in coeffs))
        p = lat.point(x, y)
        ok = lat.contains(x, y)
        ok &= p.n == int(n[i]) and p.n > 0
        ok &= f == point_to_form(p)
        ok &= f.disc == int(disc[i]) == p.ring_disc
        ok &= abs(f.disc) < reg.X
        ok &= f.hessian() == QuadForm(p.n * q.r, p.n * q.s, p.n * q.t)
        if reg.kind == NONSQUARE and D < 0:
            # the engine counts whole orbits and divides; check that the
            # orbit carries exactly one chosen representative
            from .lattice import cubic_orbit

            orbit = cubic_orbit(p, reg.sym)
            reps = sum(
                1 for v in orbit if is_fundamental_rep(lat.point(*v), reg.sym)
            )
            ok &= reps == 1
        else:
            ok &= is_fundamental_rep(p, reg.sym)
        if reg.kind == SQUARE:
            ok &= 27 * (r**3 * y * y - s**3 * x * y) ** 2 == -(D**3) * f.disc
        else:
            adj = q.adjoint()(x, y)
            ok &= adj * adj * abs(D) < 3 * r * r * t * t * reg.X
            ok &= f.disc * 3 * r * r * t * t == -adj * adj * D
        if not ok:
            bad += 1
    return bad


def _dump_rows(xs, ys, n, disc, irr, mx) -> list[str]:
    out = []
    for i in range(xs.size):
        flags = ""
        if irr is not None:
            flags += "I" if irr[i] else "-"
        if mx is not None:
            flags += "M" if mx[i] else "-"
        out.append(f"{int(xs[i])}\t{int(ys[i])}\t{int(n[i])}\t{int(disc[i])}\t{flags}")
    return out


def _process_rows(reg: RegionSpec, rows, filt: str, tester, audit: bool) -> _StageCounts:
    out = _StageCounts()
    for row in rows:
        if filt == "none" and not audit:
            out.total += _count_row_only(reg, row)
            continue
        xs, ys = _row_points(reg, row)
        if xs.size == 0:
            continue
        coeffs, n, disc = _point_data(reg, xs, ys)
        out.total += int(xs.size)
        if audit:
            out.audit_failures += _audit_points(reg, xs, ys, coeffs, n, disc)
        irr = mx = None
        if filt != "none":
            cand = _irreducible_candidates(coeffs)
            irr = ~cand
            if cand.any():
                a, b, c, d = coeffs
                for i in np.flatnonzero(cand):
                    irr[i] = is_irreducible_cubic(
                        CubicForm(int(a[i]), int(b[i]), int(c[i]), int(d[i]))
                    )
            out.irreducible += int(irr.sum())
        if filt == "maximal":
            if reg.kind == SQUARE and tester.sieve.mode == "exact":
                mx = irr & _pure_max_flags(reg, tester, xs, ys)
            else:
                a, b, c, d = coeffs
                mx = np.zeros(xs.shape, dtype=bool)
                for i in np.flatnonzero(irr):
                    f = CubicForm(int(a[i]), int(b[i]), int(c[i]), int(d[i]))
                    mx[i] = tester(f, int(n[i]))
            out.maximal += int(mx.sum())
        if audit:
            out.dump.extend(_dump_rows(xs, ys, n, disc, irr, mx))
    return out


def _fast_counts(reg: RegionSpec, filt: str, sieve: SieveConfig, audit: bool, threads: int) -> _StageCounts:
    rows = list(_rows(reg))
    if not rows:
        return _StageCounts()
    tester = _MaxTester(reg, sieve) if filt == "maximal" else None
    chunks = [rows[i : i + _ROWS_PER_CHUNK] for i in range(0, len(rows), _ROWS_PER_CHUNK)]

    def work(chunk):
        return _process_rows(reg, chunk, filt, tester, audit)

    total = _StageCounts()
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for part in ex.map(work, chunks):
                total.add(part)
    else:
        for chunk in chunks:
            total.add(work(chunk))
    return total


# ---------------------------------------------------------------------------
# naive engine

def _naive_points(reg: RegionSpec):
    q = reg.shape
    lat = reg.lattice
    r, s, t = q.coeffs()
    D = q.disc
    if reg.bound < 1:
        return
    if reg.kind == SQUARE:
        step = D // gcd(3, D)
        s3 = s**3
        for d in range(step, reg.bound + 1, step):
            cap = reg.bound // d
            alo = -((cap - r**3 * d) // s3) - 1
            ahi = (r**3 * d - 1) // s3 + 1
            for a in range(alo, ahi + 1):
                u = d * (r**3 * d - s3 * a)
                if 1 <= u <= reg.bound and lat.contains(a, d):
                    p = lat.point(a, d)
                    if p.in_plus_cone and is_fundamental_rep(p, reg.sym):
                        yield p
        return
    adj = q.adjoint()
    if D < 0:
        bmax = isqrt(4 * r * reg.bound // abs(D)) + 1
        cmax = isqrt(4 * t * reg.bound // abs(D)) + 1
        for b in range(-bmax, bmax + 1):
            for c in range(-cmax, cmax + 1):
                if (b, c) == (0, 0) or not lat.contains(b, c):
                    continue
                v = adj(b, c)
                if 1 <= v <= reg.bound:
                    p = lat.point(b, c)
                    if is_fundamental_rep(p, reg.sym):
                        yield p
        return
    sec = reg.sector
    for y in range(0, _indefinite_ymax(reg) + 1):
        rad = D * y * y + 4 * t * reg.bound
        if rad < 0:
            continue
        xlo = ceil_sub_sqrt(s * y, rad, 2 * t)
        xhi = floor_add_sqrt(s * y, rad, 2 * t)
        for x in range(xlo, xhi + 1):
            if (x, y) == (0, 0) or not lat.contains(x, y):
                continue
            v = adj(x, y)
            if 1 <= v <= reg.bound and sec.contains(x, y):
                yield lat.point(x, y)


def _naive_counts(reg: RegionSpec, filt: str, sieve: SieveConfig, audit: bool) -> _StageCounts:
    out = _StageCounts()
    tester = _MaxTester(reg, sieve) if filt == "maximal" else None
    for p in _naive_points(reg):
        f = point_to_form(p)
        out.total += 1
        flags = ""
        irr = mx = None
        if filt != "none":
            irr = is_irreducible_cubic(f)
            out.irreducible += irr
            flags += "I" if irr else "-"
        if filt == "maximal":
            if not irr:
                mx = False
            elif reg.kind == SQUARE and sieve.mode == "exact":
                mx = is_maximal_pure(p)
            else:
                mx = tester(f, p.n)
            out.maximal += mx
            flags += "M" if mx else "-"
        if audit:
            out.dump.append(f"{p.x}\t{p.y}\t{p.n}\t{p.ring_disc}\t{flags}")
    return out


# ---------------------------------------------------------------------------
# public counting interface

def count_orbits(
    shape: QuadForm,
    X: int,
    filt: str = "none",
    engine: str = "fast",
    sieve: SieveConfig = EXACT_SIEVE,
    audit: bool = False,
    audit_sink=None,
    threads: int | None = None,
) -> CountReport:
    """Count cubic-action orbit representatives with |ring disc| < X.

    Stages are cumulative: points_maximal counts points that are also
    irreducible, i.e. maximal orders in fields.
    """
    if filt not in FILTERS:
        raise InputError(f"unknown filter {filt!r}")
    if engine not in ("fast", "naive"):
        raise InputError(f"unknown engine {engine!r}")
    threads = default_threads() if threads is None else max(1, threads)
    t0 = time.monotonic()
    reg = region_for(shape, X)
    if engine == "fast":
        st = _fast_counts(reg, filt, sieve, audit, threads)
    else:
        st = _naive_counts(reg, filt, sieve, audit)
    if reg.kind == NONSQUARE and reg.shape.disc < 0 and engine == "fast":
        c = reg.sym.cube_order
        for name in ("total", "irreducible", "maximal"):
            v, rem = divmod(getattr(st, name), c)
            assert rem == 0, "the cube subgroup acts freely off the origin"
            setattr(st, name, v)
    gamma = 1 if is_ambiguous(reg.shape) else 0
    n3_or = {"none": st.total, "irreducible": st.irreducible, "maximal": st.maximal}[filt]
    report = CountReport(
        shape=shape.coeffs(),
        normalized=reg.shape.coeffs(),
        disc=reg.shape.disc,
        kind=reg.kind,
        X=X,
        filter=filt,
        engine=engine,
        gamma=gamma,
        points_total=st.total,
        points_irreducible=st.irreducible if filt != "none" else None,
        points_maximal=st.maximal if filt == "maximal" else None,
        n3_oriented=n3_or,
        n3=Fraction(n3_or, 2**gamma),
        m3_oriented=st.maximal if filt == "maximal" else None,
        m3=Fraction(st.maximal, 2**gamma) if filt == "maximal" else None,
        audit=audit,
        audit_failures=st.audit_failures,
        threads=threads,
        seconds=time.monotonic() - t0,
    )
    if audit and audit_sink is not None:
        for line in st.dump:
            audit_sink.write(line + "\n")
    if report.points_irreducible is not None:
        assert report.points_irreducible <= report.points_total
    if report.points_maximal is not None:
        assert report.points_maximal <= report.points_irreducible + 1
    return report


# ---------------------------------------------------------------------------
# squarefree pair counting and the pure-cubic field counts

def count_squarefree_pairs(N: int, congruence: str = "any") -> int:
    """#{(a, b) >= 1 : gcd(a, b) = 1, both squarefree, a*b <= N}, optionally
    with a = b (mod 9) ("same9") or a = -b (mod 9) ("opposite9")."""
    if congruence not in ("any", "same9", "opposite9"):
        raise InputError(f"unknown congruence {congruence!r}")
    if N < 1:
        return 0
    sf = squarefree_flags(N)
    total = 0
    for a in range(1, N + 1):
        if not sf[a]:
            continue
        if congruence == "any":
            total += sum(1 for b in range(1, N // a + 1) if sf[b] and gcd(a, b) == 1)
        else:
            res = a % 9 if congruence == "same9" else (-a) % 9
            start = res if res else 9
            for b in range(start, N // a + 1, 9):
                if sf[b] and gcd(a, b) == 1:
                    total += 1
    return total


def count_pairs_mod9(N: int, mod9: bool) -> int:
    """Pairs with the shape-9 congruence a = b (mod 9), or unrestricted."""
    return count_squarefree_pairs(N, "same9" if mod9 else "any")


@dataclass(frozen=True)
class PureFieldCounts:
    """Exact pure-cubic field counts below X.

    shape9_same / shape9_opposite are the two determinant-one classes of
    discriminant 9 (outer congruence a' = d' resp. a' = -d' mod 9);
    shape9_avg is their average, so total = shape1 + 2*shape9_avg exactly.
    """

    X: int
    shape1: int
    shape9_same: int
    shape9_opposite: int

    @property
    def shape9_total(self) -> int:
        return self.shape9_same + self.shape9_opposite

    @property
    def shape9_avg(self) -> Fraction:
        return Fraction(self.shape9_total, 2)

    @property
    def total(self) -> int:
        return self.shape1 + self.shape9_total

    def as_triple(self) -> tuple[int, Fraction, int]:
        return (self.shape1, self.shape9_avg, self.total)


def pure_field_counts(X: int) -> PureFieldCounts:
    """Pure cubic fields of |disc| < X, split by shape discriminant.

    Fields with shape of discriminant 1 have |disc| = 27 (ab)^2 over
    coprime squarefree pairs with a^2 != b^2 (mod 9); discriminant 9 gives
    |disc| = 3 (ab)^2 with a = +-b (mod 9).  Ordered pairs double-count
    fields (the determinant -1 symmetry swaps coordinates) and the single
    diagonal pair (1, 1) is a reducible ring, not a field.
    """
    if X < 1:
        raise InputError("X must be positive")
    n1 = max_square_below(X, 27)
    n2 = max_square_below(X, 3)
    shape1 = 0
    if n1 >= 1:
        not9 = (
            count_squarefree_pairs(n1, "any")
            - count_squarefree_pairs(n1, "same9")
            - count_squarefree_pairs(n1, "opposite9")
        )
        assert not9 % 2 == 0
        shape1 = not9 // 2
    same = count_squarefree_pairs(n2, "same9") if n2 >= 1 else 0
    opp = count_squarefree_pairs(n2, "opposite9") if n2 >= 1 else 0
    if n2 >= 1:
        same -= 1  # (1, 1): the unique maximal-but-reducible point
    assert same % 2 == 0 and opp % 2 == 0
    return PureFieldCounts(X, shape1, same // 2, opp // 2)


def dedekind_field_count(X: int) -> tuple[int, int]:
    """Independent oracle: enumerate pure cubic fields via cubefree d = a*b^2.

    One representative per field (the orderings (a, b) and (b, a) give the
    two mirror generators, whose product is a cube; a > b picks one).
    Type 1 has conductor k = 3ab (a^2 != b^2 mod 9), type 2 has k = ab.
    Returns (type1, type2) counts of fields with |disc| = 3 k^2 < X.
    """
    if X < 1:
        raise InputError("X must be positive")
    n1 = max_square_below(X, 27)
    n2 = max_square_below(X, 3)
    if n2 < 1:
        return (0, 0)
    sf = squarefree_flags(n2)
    t1 = t2 = 0
    for b in range(1, isqrt(n2) + 1):
        if not sf[b]:
            continue
        for a in range(b + 1, n2 // b + 1):
            if not sf[a] or gcd(a, b) != 1:
                continue
            if (a * a - b * b) % 9 == 0:
                t2 += 1
            elif a * b <= n1:
                t1 += 1
    return (t1, t2)


# ---------------------------------------------------------------------------
# field counts by shape discriminant / by resolvent discriminant

def count_fields_with_shape_disc(D: int, X: int, engine: str = "fast") -> int:
    """Cubic fields with |disc| < X whose maximal order has shape of
    discriminant D (non-square).  Each field carries two orientations, so
    this is half the sum of oriented counts over the class group."""
    if D > 0 and is_square_int(D):
        raise InputError("square discriminants go through pure_field_counts")
    from .reduction import class_group

    total = 0
    for rep in class_group(D).reps:
        total += count_orbits(rep, X, "maximal", engine=engine).points_maximal
    assert total % 2 == 0, "orientations pair up on fields"
    return total // 2


def count_fields_by_resolvent(d: int, X: int, engine: str = "fast") -> int:
    """Cubic fields of |disc| < X with quadratic resolvent of discriminant d.

    d is a fundamental discriminant other than -3 (that case is
    pure_field_counts().total).  The shape discriminant is -3d, joined by
    -d/3 when 3 | d.
    """
    from .intutil import is_fundamental_discriminant

    if d == -3:
        raise InputError("d = -3 is pure_field_counts(X).total")
    if not is_fundamental_discriminant(d):
        raise InputError(f"{d} is not a fundamental discriminant")
    total = count_fields_with_shape_disc(-3 * d, X, engine)
    if d % 3 == 0:
        total += count_fields_with_shape_disc(-d // 3, X, engine)
    return total
