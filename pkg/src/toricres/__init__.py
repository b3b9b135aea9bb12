"""Exact resultants, root products and power sums for developed Laurent systems."""

from .combinatorics import (
    CombCoeffTable,
    VertexMonomialExpr,
    combinatorial_coefficients,
    combinatorial_coefficients_2d,
    combinatorial_coefficients_ij,
    d_function,
    parshin_symbol,
    parshin_symbol_symbolic,
)
from .errors import (
    AmbiguousFacetError,
    DegenerateInstanceError,
    InputError,
    NotDevelopedError,
    PreconditionError,
    ToricresError,
)
from .geometry import (
    LatticePolytope,
    convex_hull,
    face,
    face_decomposition,
    facet_normals,
    is_completely_developed,
    is_developed,
    is_i_developed,
    lattice_volume,
    minkowski_sum,
    mixed_volume,
    support_value,
)
from .laurent import LaurentPoly, SystemInstance, jacobian_det, newton_polytope
from .residues import (
    newton_to_elementary,
    power_sums,
    product_over_roots,
    sum_over_roots,
    values_characteristic_polynomial,
    vertex_residue,
)
from .resultants import (
    delta_resultant_1d,
    delta_resultant_1developed,
    monomial_M_i_facets,
    monomial_M_ij,
    monomials_and_signs,
    pi_product,
    product_resultant_1d,
    signed_poisson_check,
    sylvester_resultant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
