"""Exact lattice tools for vertical walls and symplectic involutions on moduli of sheaves on K3 surfaces."""

from .lattice import (
    DegenerateLatticeError,
    DimensionError,
    DiscriminantGroup,
    GramLattice,
    IntegralIsometry,
    LatticeError,
    Sublattice,
    discriminant_group,
    divisibility,
    finite_order_rank2_is_involution,
    hyperbolic_from_isotropic,
    invariant_coinvariant,
    isometry_order,
    orthogonal_complement,
    saturate,
    short_vectors,
    signature,
    smith_normal_form,
)
from .mukai import (
    DiscAction,
    IsometryWord,
    Monodromy,
    MukaiError,
    MukaiVector,
    NonIntegralError,
    NSData,
    apply_word,
    compute_e,
    decompose_v_plus_t,
    disc_action,
    extend_to_full,
    full_mukai_lattice,
    markman_monodromy_test,
    mukai_pairing,
    parse_word,
    reflect,
)
from .walls import (
    InvariantViolation,
    StarReport,
    VerticalWallSpec,
    WallClassification,
    WallKind,
    build_vertical,
    check_star,
    classify_enumerative,
    classify_vertical,
    classify_vertical_closed_form,
    decide_involution,
    fm_reduce,
    reduction_to_vertical,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateLatticeError",
    "DimensionError",
    "DiscAction",
    "DiscriminantGroup",
    "GramLattice",
    "IntegralIsometry",
    "InvariantViolation",
    "IsometryWord",
    "LatticeError",
    "Monodromy",
    "MukaiError",
    "MukaiVector",
    "NSData",
    "NonIntegralError",
    "StarReport",
    "Sublattice",
    "VerticalWallSpec",
    "WallClassification",
    "WallKind",
    "apply_word",
    "build_vertical",
    "check_star",
    "classify_enumerative",
    "classify_vertical",
    "classify_vertical_closed_form",
    "compute_e",
    "decide_involution",
    "decompose_v_plus_t",
    "disc_action",
    "discriminant_group",
    "divisibility",
    "extend_to_full",
    "finite_order_rank2_is_involution",
    "fm_reduce",
    "full_mukai_lattice",
    "hyperbolic_from_isotropic",
    "invariant_coinvariant",
    "isometry_order",
    "markman_monodromy_test",
    "mukai_pairing",
    "orthogonal_complement",
    "parse_word",
    "reduction_to_vertical",
    "reflect",
    "saturate",
    "short_vectors",
    "signature",
    "smith_normal_form",
    "__version__",
]
