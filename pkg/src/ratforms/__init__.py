"""Exact detection and classification of algebraic constraints of rational functions."""

from .calculus import (
    hermite_antiderivative,
    logderiv_integrate,
    residue_profile,
    separability_identity,
    separable_product,
)
from .classify import (
    DependenceCertificate,
    FormReport,
    classify_trivariate,
    cube_identities,
    dependence_certificate,
    fit_bivariate,
    fit_polynomial_composition,
    test_2decomposed,
    verify_certificate,
    verify_twisted_identities,
)
from .dimension import (
    AllPolesError,
    DoublingMap,
    InconclusiveRankError,
    doubling_map,
    generic_rank,
    image_dimension,
    is_nondegenerate,
)
from .modular import DEFAULT_PRIMES, primes_below, rng_for
from .oracle import annihilating_poly, symbolic_rank
from .poly import Poly, divexact, poly_gcd
from .ratfun import (
    DegenerateSpecializationError,
    ParseError,
    PoleError,
    RatFun,
    compose_numerator,
    parse,
    partial_ratio,
)

__all__ = [
    "Poly",
    "poly_gcd",
    "divexact",
    "RatFun",
    "parse",
    "ParseError",
    "PoleError",
    "DegenerateSpecializationError",
    "compose_numerator",
    "partial_ratio",
    "DEFAULT_PRIMES",
    "primes_below",
    "rng_for",
    "DoublingMap",
    "doubling_map",
    "generic_rank",
    "image_dimension",
    "is_nondegenerate",
    "InconclusiveRankError",
    "AllPolesError",
    "annihilating_poly",
    "symbolic_rank",
    "hermite_antiderivative",
    "logderiv_integrate",
    "residue_profile",
    "separability_identity",
    "separable_product",
    "DependenceCertificate",
    "FormReport",
    "dependence_certificate",
    "verify_certificate",
    "fit_bivariate",
    "fit_polynomial_composition",
    "test_2decomposed",
    "classify_trivariate",
    "cube_identities",
    "verify_twisted_identities",
]
