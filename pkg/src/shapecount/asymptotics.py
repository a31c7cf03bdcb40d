"""Closed-form main-term coefficients: Dirichlet L-values at 1, class-number
identities, Euler products with certified truncation tails, and the
two-term predictions for square shape discriminants.

The two alpha conventions (both keyed on 3 | D) live in different formulas
and must never be mixed:

* alpha01 (0/1) appears with the L-function normalization
  3^(alpha+beta-3/2) L(1,chi_D)/(h(D) sqrt|D|) and in the field-count and
  square-discriminant formulas;
* alpha12 (1/2) appears in the geometric forms 2 pi sqrt(3)/(3^a C(Q) |D|)
  (definite) and 3 sqrt(3) log(eps)/(3^a D) (indefinite), matching the
  lattice covolume 3^a |rt|.

Their consistency (via Dirichlet's class number formula) is an invariant of
the test suite, which exercises h(D), L(1, chi_D), the Pell unit and the
symmetry-group order all at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import digamma

from .errors import InputError
from .forms import QuadForm, is_square_int
from .intutil import kronecker, primes_up_to
from .maximality import is_admissible_shape_disc, local_density
from .pell import pell_fundamental, symmetry_group
from .reduction import class_group, is_ambiguous

EULER_GAMMA = float(np.euler_gamma)
DEFAULT_PRIME_BOUND = 10**5


def alpha01(D: int) -> int:
    return 1 if D % 3 == 0 else 0


def alpha12(D: int) -> int:
    return 1 if D % 3 == 0 else 2


def beta_of(D: int) -> int:
    return 1 if D > -4 else 0


def dirichlet_l_one(D: int, tol: float = 1e-10) -> float:
    """L(1, chi_D) = sum_n (D/n)/n for the Kronecker symbol (D/.).

    The character is periodic mod |D| with zero mean (D non-square), so the
    series has the exact finite form -(1/P) * sum_a chi(a) psi(a/P); the
    digamma evaluation is good to ~1e-14 per term, far below any tol used
    here.  tol is validated, not iterated on.
    """
    if D % 4 not in (0, 1) or D == 0 or (D > 0 and is_square_int(D)):
        raise InputError("need a non-square discriminant")
    if tol < 1e-15 * abs(D):
        raise InputError("tolerance below attainable accuracy")
    P = abs(D)
    chi = np.array([kronecker(D, n) for n in range(1, P + 1)], dtype=float)
    assert abs(chi.sum()) < 0.5  # non-principal character sums to zero
    a = np.arange(1, P + 1, dtype=float) / P
    return float(-(chi * digamma(a)).sum() / P)


def class_number(D: int) -> int:
    return class_group(D).h


def order_coefficient(D: int, tol: float = 1e-10) -> float:
    """Leading coefficient of the oriented count of cubic orders with shape
    of non-square discriminant D: 3^(alpha+beta-3/2) L(1,chi_D)/(h sqrt|D|)."""
    a, b = alpha01(D), beta_of(D)
    return (
        3.0 ** (a + b - 1.5)
        * dirichlet_l_one(D, tol)
        / (class_number(D) * math.sqrt(abs(D)))
    )


def order_coefficient_geometric(q: QuadForm) -> float:
    """Same coefficient computed from the lattice geometry of one form:
    definite 2 pi sqrt(3) / (3^a C(Q) |D|), indefinite
    3 sqrt(3) log(eps) / (3^a D)."""
    D = q.disc
    if D == 0 or (D > 0 and is_square_int(D)):
        raise InputError("need a non-square discriminant")
    a = alpha12(abs(D))
    if D < 0:
        cq = symmetry_group(q).cube_order
        return 2 * math.pi * math.sqrt(3) / (3**a * cq * abs(D))
    pd = pell_fundamental(D)
    log_eps = math.log((pd.u0 + pd.w0 * math.sqrt(D)) / 2)
    return 3 * math.sqrt(3) * log_eps / (3**a * D)


@dataclass(frozen=True)
class CoeffValue:
    """A truncated Euler-product value with a certified enclosure."""

    value: float
    low: float
    high: float
    prime_bound: int

    def halfwidth(self) -> float:
        return (self.high - self.low) / 2


def _split_product_tail(P: int) -> float:
    # |log prod_{p>P} (1 - 2/(p(p+1)))| <= sum_{n>P} 2.5/n^2 <= 2.5/P
    return 2.5 / P


def field_coefficient(D: int, prime_bound: int = DEFAULT_PRIME_BOUND, tol: float = 1e-10) -> CoeffValue:
    """Leading coefficient of the oriented count of maximal cubic orders
    (fields, counted with orientation) of shape discriminant D:

        3^(alpha+beta+3/2)/(4 pi^2) * mu3(D) * L(1,chi_D)/(h sqrt|D|)
          * prod_{(D/p)=1, p!=3} (1 - 2/(p(p+1))) * prod_{p|D, p!=3} p/(p+1).

    Zero for inadmissible D.  The unoriented (field) coefficient is half of
    this when the class of shapes is ambiguous.
    """
    if not is_admissible_shape_disc(D) or (D > 0 and is_square_int(D)):
        return CoeffValue(0.0, 0.0, 0.0, prime_bound)
    a, b = alpha01(D), beta_of(D)
    mu3 = local_density(D, 3)
    base = (
        3.0 ** (a + b + 1.5)
        / (4 * math.pi**2)
        * float(mu3)
        * dirichlet_l_one(D, tol)
        / (class_number(D) * math.sqrt(abs(D)))
    )
    logs = 0.0
    for p in primes_up_to(prime_bound):
        if p == 3:
            continue
        if D % p == 0:
            logs += math.log(p / (p + 1))
        elif kronecker(D, p) == 1:
            logs += math.log1p(-2 / (p * (p + 1)))
    val = base * math.exp(logs)
    tail = _split_product_tail(prime_bound)
    lo, hi = val * math.exp(-tail), val * math.exp(tail)
    return CoeffValue(val, min(lo, hi), max(lo, hi), prime_bound)


def resolvent_coefficient(d: int, prime_bound: int = DEFAULT_PRIME_BOUND, tol: float = 1e-10) -> CoeffValue:
    """Leading coefficient of the count of cubic fields with quadratic
    resolvent of fundamental discriminant d != -3:

        3^(alpha+beta-1/2) C0 / (pi^2 sqrt|D|) * prod_{p|D} p/(p+1) * L(D)

    with D = -d/3 if 3 | d else -3d, C0 = 11/9, 5/3, 7/5 as d = 0, 3, 6 is
    impossible resp. d mod 9 dictates, and
    L(D) = L(1,chi_D) prod_{(D/p)=1} (1 - 2/(p(p+1))).
    """
    from .intutil import is_fundamental_discriminant

    if d == -3 or not is_fundamental_discriminant(d):
        raise InputError("need a fundamental discriminant other than -3")
    D = -d // 3 if d % 3 == 0 else -3 * d
    a, b = alpha01(D), beta_of(D)
    if d % 3 != 0:
        c0 = Fraction(11, 9)
    elif d % 9 == 3:
        c0 = Fraction(5, 3)
    elif d % 9 == 6:
        c0 = Fraction(7, 5)
    else:  # 9 | d cannot happen for fundamental d
        raise InputError("unexpected d mod 9")
    base = 3.0 ** (a + b - 0.5) * float(c0) / (math.pi**2 * math.sqrt(abs(D)))
    logs = math.log(dirichlet_l_one(D, tol))
    for p in primes_up_to(prime_bound):
        if D % p == 0:
            logs += math.log(p / (p + 1))
        elif kronecker(D, p) == 1:
            logs += math.log1p(-2 / (p * (p + 1)))
    val = base * math.exp(logs)
    tail = _split_product_tail(prime_bound)
    return CoeffValue(val, val * math.exp(-tail), val * math.exp(tail), prime_bound)


@dataclass(frozen=True)
class UniversalConstants:
    """C = prod_p (1 - 3/p^2 + 2/p^3) and kappa = sum_p log(p)/(p^2+p-2),
    with certified truncation enclosures."""

    C: CoeffValue
    kappa: CoeffValue

    @property
    def euler_gamma(self) -> float:
        return EULER_GAMMA


def universal_constants(prime_bound: int = DEFAULT_PRIME_BOUND) -> UniversalConstants:
    if prime_bound < 100:
        raise InputError("prime bound too small for a meaningful tail")
    ps = np.array(primes_up_to(prime_bound), dtype=float)
    logc = float(np.log1p(-3.0 / ps**2 + 2.0 / ps**3).sum())
    # |log tail| <= sum_{n>P} 3.2/n^2 <= 3.2/P
    ctail = 3.2 / prime_bound
    cval = math.exp(logc)
    kap = float((np.log(ps) / (ps**2 + ps - 2.0)).sum())
    # tail <= int_P^inf log(x)/x^2 dx = (log P + 1)/P
    ktail = (math.log(prime_bound) + 1) / prime_bound
    return UniversalConstants(
        C=CoeffValue(cval, cval * math.exp(-ctail), cval * math.exp(ctail), prime_bound),
        kappa=CoeffValue(kap, kap, kap + ktail, prime_bound),
    )


def square_disc_order_prediction(D: int, X: int | float) -> tuple[float, float, float]:
    """Two-term main value of the oriented ring count for a square shape
    discriminant D:  3^(a-3/2)/(2D) sqrt(X) log X
                   + 3^(a-3/2)/D (2 gamma - 1 + (3/2) log(D/3)) sqrt(X).
    Returns (total, leading, second)."""
    if D <= 0 or not is_square_int(D):
        raise InputError("need a positive square discriminant")
    a = alpha01(D)
    sx = math.sqrt(X)
    lead = 3.0 ** (a - 1.5) / (2 * D) * sx * math.log(X)
    second = 3.0 ** (a - 1.5) / D * (2 * EULER_GAMMA - 1 + 1.5 * math.log(D / 3)) * sx
    return (lead + second, lead, second)


def pure_field_prediction(X: int | float, prime_bound: int = DEFAULT_PRIME_BOUND) -> tuple[float, float, float]:
    """Two-term main values (shape disc 1, shape disc 9 per class, total)
    of the pure cubic field counts below X:

        M(1) = C/(15 sqrt 3) sqrt(X) (log X - 16/5 log 3 + 4 g + 12 k - 2)
        M(9) = C/(40 sqrt 3) sqrt(X) (log X -  1/5 log 3 + 4 g + 12 k - 2)
        total = M(1) + 2 M(9)
              = 7C/(60 sqrt 3) sqrt(X) (log X - 67/35 log 3 + 4 g + 12 k - 2).
    """
    uc = universal_constants(prime_bound)
    C, kap = uc.C.value, uc.kappa.value
    g = EULER_GAMMA
    sx = math.sqrt(X)
    l3 = math.log(3)
    base = math.log(X) + 4 * g + 12 * kap - 2
    m1 = C / (15 * math.sqrt(3)) * sx * (base - 16 / 5 * l3)
    m9 = C / (40 * math.sqrt(3)) * sx * (base - 1 / 5 * l3)
    total = 7 * C / (60 * math.sqrt(3)) * sx * (base - 67 / 35 * l3)
    assert abs(total - (m1 + 2 * m9)) < 1e-9 * max(1.0, abs(total))
    return (m1, m9, total)


def class_number_formula_error(D: int, tol: float = 1e-10) -> float:
    """Relative error |h - h_formula| / h for Dirichlet's formula:
    h = w sqrt|D| L(1,chi_D) / (2 pi) for D < 0 (w = 6, 4, 2), and
    h = sqrt(D) L(1,chi_D) / log(eps) for D > 0."""
    h = class_number(D)
    L = dirichlet_l_one(D, tol)
    if D < 0:
        w = 6 if D == -3 else (4 if D == -4 else 2)
        rhs = w * math.sqrt(abs(D)) * L / (2 * math.pi)
    else:
        pd = pell_fundamental(D)
        rhs = math.sqrt(D) * L / math.log((pd.u0 + pd.w0 * math.sqrt(D)) / 2)
    return abs(h - rhs) / h


@dataclass(frozen=True)
class PredictionCoefficients:
    """Everything that enters the closed-form predictions for one non-square
    shape discriminant (and one shape class for gamma)."""

    D: int
    alpha01: int
    alpha12: int
    beta: int
    gamma: int
    h: int
    L1: float
    mu3: Fraction
    admissible: bool
    order_coeff: float
    field_coeff: CoeffValue
    prime_bound: int

    def describe(self) -> dict:
        d = dict(self.__dict__)
        d["mu3"] = str(self.mu3)
        d["field_coeff"] = self.field_coeff.value
        d["field_coeff_low"] = self.field_coeff.low
        d["field_coeff_high"] = self.field_coeff.high
        return d


def prediction_for(q: QuadForm, prime_bound: int = DEFAULT_PRIME_BOUND) -> PredictionCoefficients:
    D = q.disc
    if D == 0 or (D > 0 and is_square_int(D)):
        raise InputError("square discriminants use square_disc_order_prediction")
    return PredictionCoefficients(
        D=D,
        alpha01=alpha01(D),
        alpha12=alpha12(D),
        beta=beta_of(D),
        gamma=1 if is_ambiguous(q) else 0,
        h=class_number(D),
        L1=dirichlet_l_one(D),
        mu3=local_density(D, 3),
        admissible=is_admissible_shape_disc(D),
        order_coeff=order_coefficient(D),
        field_coeff=field_coefficient(D, prime_bound),
        prime_bound=prime_bound,
    )
