"""Exact Dedekind sums, the SL2 branch cocycle, and Hecke triangle
group Dedekind symbols, with an equidistribution experiment harness."""

from .classical import (
    IntegerMatrix,
    dedekind_sum_fast,
    dedekind_sum_naive,
    phi_via_eta,
    rademacher_phi,
    reciprocity_residual,
    sawtooth,
)
from .cocycle import GroupElement, c_of_minus_d, omega, omega_analytic, psi_accumulate, psi_sl2
from .equidist import (
    CosetTable,
    WeylSumSeries,
    count_series,
    discrepancy,
    enumerate_cosets,
    export_series_csv,
    export_table_csv,
    growth_fit,
    weyl_series,
    weyl_sum,
)
from .field import (
    FieldElement,
    MinimalPolynomial,
    Rational,
    embed_float,
    floor_of,
    minimal_poly,
    parse_element,
    sign,
    to_float,
)
from .hecke import (
    HeckeGroup,
    ReductionError,
    TrivialCosetError,
    Word,
    make_group,
    membership,
    normalize,
    psi_word,
    rationality_report,
    reciprocity_residual_hecke,
    rosen_reduce,
    symbol_descent,
    symbol_from_word,
    three_term_residual,
    unnormalize,
    word_to_matrix,
)

__version__ = "0.1.0"
