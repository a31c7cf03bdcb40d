"""Failure types shared across the package.

Everything downstream distinguishes only three situations: the caller gave
us something invalid, a value left the supported integer range, or an exact
computation ran out of its declared search budget.  The CLI maps these to
exit codes 1, 2 and 2 respectively.
"""


class InputError(ValueError):
    """Invalid argument (bad form, bad discriminant, unsupported mode)."""


class RangeError(OverflowError):
    """A coefficient or derived quantity left the supported integer range.

    All arithmetic is exact; this is a contract check, never a silent wrap.
    """


class FactorBudgetError(RuntimeError):
    """Exact factorization exceeded the trial-division budget."""
