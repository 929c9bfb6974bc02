"""Sparse polynomial zero testing and system solving on finite-field grids.

The package turns sparsity (the number of monomials in a polynomial) into
search radii: if a sparse polynomial has a nonzero anywhere on a rectangular
grid of nonzero field elements, it has one inside a small Hamming ball around
every grid point.  That gives a deterministic black-box zero test, a
nearest-nonzero search, and a solver for sparse polynomial systems, together
with exhaustive brute-force verifiers for the underlying counting bounds.
"""

from gridball.gf import (
    FieldElement,
    FieldSpec,
    make_field,
    max_ratio_order,
    mul_order,
    parse_field_name,
    subgroup_of_order,
)
from gridball.poly import SparsePoly
from gridball.domain import RectangularDomain, enumerate_ball, entropy, hamming_distance, vol
from gridball.tester import (
    EvaluationOracle,
    SearchReport,
    find_nonzero_near,
    radius_degree_bounded,
    radius_general,
    select_radius,
    test_zero_on_power_domain,
)
from gridball.solver import (
    PolySystem,
    check_not_singleton,
    indicator_value,
    solve_near,
    solve_near_zero_domain,
    system_radius,
)

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "make_field",
    "max_ratio_order",
    "mul_order",
    "parse_field_name",
    "subgroup_of_order",
    "SparsePoly",
    "RectangularDomain",
    "enumerate_ball",
    "entropy",
    "hamming_distance",
    "vol",
    "EvaluationOracle",
    "SearchReport",
    "find_nonzero_near",
    "radius_degree_bounded",
    "radius_general",
    "select_radius",
    "test_zero_on_power_domain",
    "PolySystem",
    "check_not_singleton",
    "indicator_value",
    "solve_near",
    "solve_near_zero_domain",
    "system_radius",
    "__version__",
]
