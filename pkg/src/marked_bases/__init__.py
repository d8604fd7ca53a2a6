"""Marked bases over quasi-stable monomial modules: exact kernel and CLI."""

from .ring import (
    Coeff,
    Exponent,
    FreeModuleLayout,
    HeterogeneousElement,
    MarkedBasesError,
    MissingParameter,
    ModuleElement,
    ModuleTerm,
    ParamPoly,
    canonicalize,
    mul_term,
    param_evaluate,
)
from .monom import (
    InvariantReport,
    MonomialModule,
    NotQuasiStable,
    PommaretBasis,
    StabilityClass,
    basis_invariants,
    colon_saturation_basis,
    complement_rank,
    complement_terms,
    cone_divisor,
    hilbert_function,
    is_pommaret_basis,
    multiplicative_variables,
    nonmultiplicative_variables,
    pommaret_completion,
    quasi_stability_witness,
    rho,
    saturate,
    stability_class,
    truncate_basis,
)
from .marked import (
    BasisCheck,
    HeadCoefficientNotOne,
    HeadMismatch,
    InternalNonTermination,
    MarkedElement,
    MarkedSet,
    NotABasis,
    Representation,
    TailTermInU,
    contains,
    is_marked_basis,
    monomial_marked_set,
    reduce_full,
)
from .syzygy import (
    BoundsReport,
    FreeResolution,
    ParametricCoefficients,
    free_resolution,
    invariant_bounds,
    minimize_resolution,
    predicted_ranks,
    syzygy_marked_basis,
    verify_complex,
)
from .family import (
    FamilyIdeal,
    GenericMarkedSet,
    HypothesisViolated,
    Specialization,
    StructureViolated,
    TriangularReport,
    family_equations,
    generic_marked_set,
    specialize,
    tails_respect_min_variable,
    triangular_representation,
    x0_heads_are_divisible,
)
from .textio import (
    ComponentOutOfRange,
    InputDocument,
    InputFormatError,
    PolySyntaxError,
    UnknownVariable,
    format_element,
    format_marked_element,
    format_module_term,
    format_param_poly,
    parse_document,
    parse_marked_polynomial,
    parse_polynomial,
    parse_resolution,
    resolution_to_dict,
    resolutions_equal,
    serialize_resolution,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
