"""Nilpotency index of the radical of the module category of a
representation-finite bound quiver algebra.

The package knits Auslander-Reiten quivers from dimension vectors, runs
string-fan combinatorics, applies vertex-reduction theorems and
closed-form decomposition formulas, and cross-validates every applicable
method.
"""

from .errors import RadindexError
from .formulas import (
    IndexReport,
    b_nonempty,
    family_match,
    glued_index,
    hereditary_index,
    pullback_index,
    pullback_split,
    route,
    sectional_criterion,
    toupie_index,
)
from .knitting import ARQuiver, has_length, knit, nilpotency_knit, r_a_knit, reach
from .pathspace import (
    DimensionVector,
    dim_injective,
    dim_projective,
    dim_simple,
    path_basis,
)
from .quiver import (
    AlgebraClass,
    Arrow,
    BoundQuiver,
    Quiver,
    Relation,
    classify,
    parse_bound_quiver,
    serialize,
)
from .reductions import (
    overlap_report,
    representative_set,
    toupie_branch_vertex,
    zero_relation_vertices,
)
from .strings import (
    StringWalk,
    arrow_string_sets,
    enumerate_strings,
    nilpotency_string,
    r_u_string,
    string_fan,
)

__version__ = "0.1.0"

__all__ = [
    "ARQuiver",
    "AlgebraClass",
    "Arrow",
    "BoundQuiver",
    "DimensionVector",
    "IndexReport",
    "Quiver",
    "RadindexError",
    "Relation",
    "StringWalk",
    "arrow_string_sets",
    "b_nonempty",
    "classify",
    "dim_injective",
    "dim_projective",
    "dim_simple",
    "enumerate_strings",
    "family_match",
    "glued_index",
    "has_length",
    "hereditary_index",
    "knit",
    "nilpotency_knit",
    "nilpotency_string",
    "overlap_report",
    "parse_bound_quiver",
    "path_basis",
    "pullback_index",
    "pullback_split",
    "r_a_knit",
    "r_u_string",
    "reach",
    "representative_set",
    "route",
    "sectional_criterion",
    "serialize",
    "string_fan",
    "toupie_branch_vertex",
    "toupie_index",
    "zero_relation_vertices",
]
