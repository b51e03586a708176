"""Exact arithmetic for even integral lattices and their discriminant forms.

The package computes with Gram matrices over Z using arbitrary-precision
integers and rationals only: Hermite and Smith normal forms with
transforms, discriminant quadratic forms, isotropic subgroups and the
overlattice correspondence, configurations of rational curves with
branched-cover pullbacks and involution quotients, and a verification
harness that reproduces the published lattice computations for the
triple-double K3 family and its symplectic quotient.
"""

__version__ = "0.1.0"

from .exactlinalg import (
    IntMat,
    RatMat,
    hnf,
    kernel_saturated,
    signature,
    snf,
    snf_rational,
    solve_rational,
)
from .lattice import (
    DualVector,
    Lattice,
    SublatticeData,
    contains,
    direct_sum,
    discriminant_group,
    is_even,
    is_primitive,
    make_named,
    nikulin_unique,
    norm_gcd,
    orthogonal_complement,
    parse_lattice_expr,
    rescale,
    saturation,
    scale_gcd,
    splits_E8,
    splits_U,
    sublattice,
    two_elem_invariants,
)
from .discform import (
    FiniteQuadraticModule,
    IsotropicSubgroup,
    are_isomorphic,
    b_value,
    from_lattice,
    isotropic_elements,
    isotropic_subgroups,
    negate,
    overlattice,
    q_value,
)
from .curves import (
    CoverStep,
    CurveConfig,
    EvenFourCertificate,
    FixedPointData,
    InvolutionAction,
    double_cover_pullback,
    find_even_four_certificate,
    hexagon_config,
    present,
    quotient_by_involution,
    triple_double_tower,
)
from .ratfun import INFINITY, Poly, RatFun, mobius_images
from .reconstruct import Reconstruction24, reconstruct_24, reconstruct_xprime
from .verify import VerificationReport, run_all

__all__ = [
    "IntMat", "RatMat", "hnf", "snf", "snf_rational", "signature",
    "solve_rational", "kernel_saturated",
    "Lattice", "DualVector", "SublatticeData", "make_named",
    "parse_lattice_expr", "direct_sum", "rescale", "discriminant_group",
    "sublattice", "saturation", "orthogonal_complement", "is_primitive",
    "contains", "is_even", "scale_gcd", "norm_gcd", "nikulin_unique",
    "splits_E8", "splits_U", "two_elem_invariants",
    "FiniteQuadraticModule", "IsotropicSubgroup", "from_lattice", "q_value",
    "b_value", "isotropic_elements", "isotropic_subgroups", "overlattice",
    "are_isomorphic", "negate",
    "CurveConfig", "CoverStep", "InvolutionAction", "FixedPointData",
    "EvenFourCertificate", "double_cover_pullback", "quotient_by_involution",
    "find_even_four_certificate", "present", "hexagon_config",
    "triple_double_tower",
    "Poly", "RatFun", "INFINITY", "mobius_images",
    "Reconstruction24", "reconstruct_24", "reconstruct_xprime",
    "VerificationReport", "run_all",
]
