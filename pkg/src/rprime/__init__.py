"""Ideal counting and relatively r-prime lattice point statistics.

Pipeline: a field descriptor (numberfield) feeds a multiplicative sieve
(multsieve) that tabulates the ideal-count coefficients a(n) and their
Dirichlet inverse m(n); counting turns tables into I_K(x) and V_m^r(x, K);
analytic supplies the main-term constants (residue, L-values, class numbers,
regulators, zeta special values); analysis measures error terms against the
published exponent catalog. The cli module fronts all of it.
"""

__version__ = "0.1.0"

from .analysis import (
    ExponentTarget,
    FitResult,
    TransferBound,
    discriminant_sweep,
    error_series,
    fit_exponent,
    target_catalog,
    transfer_error_exponents,
)
from .analytic import (
    ResidueInfo,
    class_number_quadratic,
    dirichlet_L1,
    fundamental_unit_regulator,
    main_term,
    residue_c,
    zeta_K_real,
    zeta_K_value,
)
from .counting import (
    CountResult,
    brute_force_rprime,
    count_rprime,
    enumerate_ideals,
    ideal_count,
)
from .multsieve import (
    CoeffTable,
    build_table,
    sieve_moebius_coeffs,
    sieve_zeta_coeffs,
)
from .numberfield import (
    FieldDescriptor,
    SplittingType,
    make_monogenic,
    make_quadratic,
    make_rational,
    parse_field_spec,
    splitting_type,
)

__all__ = [
    "CoeffTable",
    "CountResult",
    "ExponentTarget",
    "FieldDescriptor",
    "FitResult",
    "ResidueInfo",
    "SplittingType",
    "TransferBound",
    "brute_force_rprime",
    "build_table",
    "class_number_quadratic",
    "count_rprime",
    "dirichlet_L1",
    "discriminant_sweep",
    "enumerate_ideals",
    "error_series",
    "fit_exponent",
    "fundamental_unit_regulator",
    "ideal_count",
    "main_term",
    "make_monogenic",
    "make_quadratic",
    "make_rational",
    "parse_field_spec",
    "residue_c",
    "sieve_moebius_coeffs",
    "sieve_zeta_coeffs",
    "splitting_type",
    "target_catalog",
    "transfer_error_exponents",
    "zeta_K_real",
    "zeta_K_value",
    "__version__",
]
