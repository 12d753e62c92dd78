"""Exact computational algebra for corings built from entwining structures.

The package computes, over Q or a prime field, the coring attached to an
entwining structure, its dual ring, the coinvariant subring, the connecting
Morita context, and decides the Galois, cleft and structure-theorem
properties of the extension, cross-checking the equivalences clause by
clause.
"""

from .exactla import (
    QQ,
    GF,
    DenseMatrix,
    ExactLAError,
    FieldSpec,
    QuotientSpace,
    ShapeError,
    Subspace,
    image,
    kernel,
    kron,
    quotient,
    solve,
)
from .algebra import (
    AlgebraPresentation,
    BimodulePresentation,
    ModulePresentation,
    balanced_tensor,
    hom_module,
    is_fg_projective,
    is_generator,
    verify_algebra,
    verify_module,
)
from .coalgebra import (
    CoalgebraPresentation,
    convolution,
    convolution_inverse,
    is_grouplike_C,
    verify_coalgebra,
)
from .entwining import (
    EntwinedContext,
    EntwiningMap,
    build_coring,
    build_sharp_ring,
    comodule_algebra_from_unit,
    doi_koppinen,
    instance_from_json,
    verify_entwining,
)
from .coring import (
    ComoduleInstance,
    CoringPresentation,
    coinvariants,
    dual_action,
    dual_ring,
    hom_comodule,
    induced_comodule,
    verify_coring,
    x_invariants,
)
from .morita import (
    ClauseDisagreement,
    build_context,
    check_theorem_Cfinite,
    check_theorem_surj,
    compute_B,
    compute_Q,
    find_qhat,
    omega_and_lambda,
    psi_tilde_from_F,
    trace_map,
    xi_M,
)
from .galois import (
    StructureVerdict,
    beta,
    beta_W,
    phi_N,
    psi_M,
    psi_prime_M,
    structure_report,
    varpi_M,
)
from .cleft import (
    CleftResult,
    check_theorem_main,
    check_theorem_xcase,
    find_cleft,
    gamma_M,
    integral_space,
    lemma_coQ_check,
    normal_basis_check,
)
from .fixtures import Fixture, all_fixtures, fixture
from .verdict import AxiomFailure, Verdict, VerificationError

__all__ = [
    "QQ", "GF", "DenseMatrix", "ExactLAError", "FieldSpec", "QuotientSpace",
    "ShapeError", "Subspace", "image", "kernel", "kron", "quotient", "solve",
    "AlgebraPresentation", "BimodulePresentation", "ModulePresentation",
    "balanced_tensor", "hom_module", "is_fg_projective", "is_generator",
    "verify_algebra", "verify_module",
    "CoalgebraPresentation", "convolution", "convolution_inverse",
    "is_grouplike_C", "verify_coalgebra",
    "EntwinedContext", "EntwiningMap", "build_coring", "build_sharp_ring",
    "comodule_algebra_from_unit", "doi_koppinen", "instance_from_json",
    "verify_entwining",
    "ComoduleInstance", "CoringPresentation", "coinvariants", "dual_action",
    "dual_ring", "hom_comodule", "induced_comodule", "verify_coring",
    "x_invariants",
    "ClauseDisagreement", "build_context", "check_theorem_Cfinite",
    "check_theorem_surj", "compute_B", "compute_Q", "find_qhat",
    "omega_and_lambda", "psi_tilde_from_F", "trace_map", "xi_M",
    "StructureVerdict", "beta", "beta_W", "phi_N", "psi_M", "psi_prime_M",
    "structure_report", "varpi_M",
    "CleftResult", "check_theorem_main", "check_theorem_xcase", "find_cleft",
    "gamma_M", "integral_space", "lemma_coQ_check", "normal_basis_check",
    "Fixture", "all_fixtures", "fixture",
    "AxiomFailure", "Verdict", "VerificationError",
]

__version__ = "0.1.0"
