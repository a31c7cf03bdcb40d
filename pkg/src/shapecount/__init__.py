"""Exact counting of cubic orders and fields by lattice shape."""

from .errors import FactorBudgetError, InputError, RangeError
from .forms import CubicForm, QuadForm, Unimodular, act_cubic, act_quadratic, is_irreducible_cubic
from .lattice import ShapeLattice, ShapePoint, form_to_point, is_fundamental_rep, point_to_form, shape_lattice, shape_of_cubic
from .maximality import (
    SieveConfig,
    is_admissible_shape_disc,
    is_maximal,
    is_maximal_at,
    is_maximal_pure,
    local_density,
    local_density_empirical,
)
from .pell import PellData, SymmetryGroup, pell_fundamental, symmetry_group
from .reduction import ClassGroupData, canonical_form, class_group, is_ambiguous, normalize_shape, square_canonical
from .counting import (
    CountReport,
    count_fields_by_resolvent,
    count_fields_with_shape_disc,
    count_orbits,
    count_pairs_mod9,
    count_squarefree_pairs,
    dedekind_field_count,
    pure_field_counts,
)
from . import asymptotics

__all__ = [
    "CubicForm", "QuadForm", "Unimodular", "act_cubic", "act_quadratic",
    "is_irreducible_cubic", "ShapeLattice", "ShapePoint", "shape_lattice",
    "point_to_form", "form_to_point", "shape_of_cubic", "is_fundamental_rep",
    "SieveConfig", "is_maximal", "is_maximal_at", "is_maximal_pure",
    "local_density", "local_density_empirical", "is_admissible_shape_disc",
    "PellData", "SymmetryGroup", "pell_fundamental", "symmetry_group",
    "ClassGroupData", "canonical_form", "class_group", "is_ambiguous",
    "normalize_shape", "square_canonical", "CountReport", "count_orbits",
    "count_squarefree_pairs", "count_pairs_mod9", "pure_field_counts",
    "dedekind_field_count", "count_fields_with_shape_disc",
    "count_fields_by_resolvent", "asymptotics",
    "InputError", "RangeError", "FactorBudgetError",
]

__version__ = "0.1.0"
