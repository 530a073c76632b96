"""Equivariant Fredholm analysis for finite abelian group actions.

The library is organized in four layers: exact group/character arithmetic
(`groups`), the isotypical calculus of unitary representations (`reps`),
discretized symbol bundles with ellipticity verdicts (`bundles`), and a grid
laboratory for invariant operators and boundary-value problems (`lab`).  JSON
schemas and the command-line front end live in `serialize` and `cli`.
"""

from .groups import (
    Character,
    Group,
    Subgroup,
    SubgroupCharacter,
    all_subgroups,
    annihilator,
    associated,
    char_eval,
    char_inv,
    char_mul,
    character,
    characters_of_subgroup,
    coset_transversal,
    dual_characters,
    full_subgroup,
    make_group,
    restrict_character,
    subgroup_from_generators,
    trivial_subgroup,
)
from .reps import (
    AmbiguousRankError,
    InternalInconsistencyError,
    KerImSplit,
    MultiplicityVector,
    UnitaryRep,
    carrier_dual,
    character_rep,
    commutant_dimension,
    commutant_factors,
    conjugate_rep,
    decompose,
    deterministic_range_basis,
    diagonal_rep,
    direct_sum,
    EquivariantEndomorphism,
    equivariance_defect,
    equivariant_endomorphism,
    frobenius_hom_map,
    frobenius_invariant_map,
    haar_unitary,
    induce,
    intertwiner_basis,
    isotypical_basis,
    isotypical_projector,
    ker_im_pi_alpha,
    null_space_basis,
    numerical_rank,
    pi_alpha_restrict,
    random_rep,
    regular_rep,
    restrict_rep,
    unitary_rep,
)
from .bundles import (
    BundleValidation,
    EllipticityEntry,
    EllipticityReport,
    EquivariantSampleBundle,
    ModelInconsistencyError,
    PrimRecord,
    SymbolField,
    Violation,
    XPoint,
    alpha_elliptic_check,
    build_X,
    build_X_alpha,
    fiber_rep,
    gamma_symbol_eval,
    isotropy,
    minimal_isotropy,
    orbit_of,
    orbits,
    partition_by_beta,
    pointwise_invertible,
    prim_enumerate,
    propagate_symbol,
    random_bundle,
    random_symbol,
    require_valid,
    sample_bundle,
    symbol_equivariance_defect,
    symbol_field,
    validate_bundle,
)
from .lab import (
    DoubledProblem,
    GridOperator,
    RefinementSweep,
    analytic_bvp_spectrum,
    build_fixed_point_degenerate_operator,
    build_invariant_circle_operator,
    convergence_order,
    double_interval_bvp,
    fredholm_proxy_sweep,
    invariant_subspace_basis,
    isotypical_block,
    mixed_bvp_spectrum,
    reflection_circle_rep,
    restriction_to_base,
    rotation_circle_rep,
)
from .serialize import (
    InputDocumentError,
    canonical_json,
    character_doc,
    element_key,
    group_doc,
    load_bundle,
    load_group,
    load_rep,
    matrix_doc,
    multiplicity_doc,
    parse_element_key,
    rep_doc,
)

__version__ = "0.1.0"
