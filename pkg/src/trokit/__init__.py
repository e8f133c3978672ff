"""Toolkit for ordered selfadjoint ternary spaces of matrices.

A selfadjoint subspace of square complex matrices that is closed under
the triple product ``x y* z`` carries an intrinsic order theory: its
selfadjoint central tripotents classify the natural matrix orderings it
admits.  This package constructs such spaces from generators, computes
their invariants (square, algebra part, center), enumerates the central
tripotents and the cones they induce, tests structural maps between
spaces, and cross-validates everything combinatorially in the
commutative case via finite topological spaces with involution.
"""

from .commutative import (
    FiniteInvolutiveSpace,
    SectionCone,
    SectionSpace,
    antisymmetric_open_sets,
    build_sections,
    cone_inclusion_matches_set_inclusion,
    cone_of_open_set,
    embed_as_tro,
    enumerate_spaces,
    is_maximal_antisymmetric,
    recover_open_set,
    vanishing_ideal,
)
from .linalg import (
    TOL,
    Subspace,
    Tolerance,
    adjoint,
    hs_inner,
    hs_norm,
    intersect,
    is_hermitian,
    is_psd,
    matrix_unit,
    op_norm,
    orthonormalize,
    span_union,
    subspace_equal,
)
from .morphisms import (
    Automorphism,
    CompressedSystem,
    LinearMap,
    compress,
    cp_refutation,
    induced_hom,
    is_completely_positive_up_to,
    is_selfadjoint_map,
    is_ternary_star_morphism,
    period_two_automorphism,
)
from .ordering import (
    ClassificationReport,
    NaturalCone,
    classify,
    cone_intersection_is_meet,
    cone_membership,
    decompose,
    is_unorderable,
    matrix_cone_membership,
    peirce_product,
    peirce_space,
)
from .tripotents import (
    BlockCapError,
    Tripotent,
    central_blocks,
    enumerate_central_tripotents,
    is_selfadjoint_tripotent,
    leq,
    maximal_central_tripotents,
    meet,
)
from .tro import (
    Tro,
    TroError,
    algebra_part,
    center_of,
    closure_from_generators,
    direct_sum,
    is_selfadjoint_space,
    is_ternary_closed,
    orthocomplement_ideal,
    reconstructs,
    ternary_product,
)

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "Automorphism",
    "BlockCapError",
    "ClassificationReport",
    "CompressedSystem",
    "FiniteInvolutiveSpace",
    "LinearMap",
    "NaturalCone",
    "SectionCone",
    "SectionSpace",
    "Subspace",
    "Tolerance",
    "Tripotent",
    "Tro",
    "TroError",
    "adjoint",
    "algebra_part",
    "antisymmetric_open_sets",
    "build_sections",
    "center_of",
    "central_blocks",
    "classify",
    "closure_from_generators",
    "compress",
    "cone_inclusion_matches_set_inclusion",
    "cone_intersection_is_meet",
    "cone_membership",
    "cone_of_open_set",
    "cp_refutation",
    "decompose",
    "direct_sum",
    "embed_as_tro",
    "enumerate_central_tripotents",
    "enumerate_spaces",
    "hs_inner",
    "hs_norm",
    "induced_hom",
    "intersect",
    "is_completely_positive_up_to",
    "is_hermitian",
    "is_maximal_antisymmetric",
    "is_psd",
    "is_selfadjoint_map",
    "is_selfadjoint_space",
    "is_selfadjoint_tripotent",
    "is_ternary_closed",
    "is_ternary_star_morphism",
    "is_unorderable",
    "leq",
    "matrix_cone_membership",
    "matrix_unit",
    "maximal_central_tripotents",
    "meet",
    "op_norm",
    "orthocomplement_ideal",
    "orthonormalize",
    "peirce_product",
    "peirce_space",
    "period_two_automorphism",
    "reconstructs",
    "recover_open_set",
    "span_union",
    "subspace_equal",
    "ternary_product",
    "vanishing_ideal",
]
