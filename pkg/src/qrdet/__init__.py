"""Determinants of [(i^2 + d j^2)^m] over F_p and checks of their congruences."""

from .closed_forms import (
    DecompositionResult,
    HypothesisError,
    TwoSquares,
    remark_character_sum_check,
    remark_delta,
    sun_prior_sp2,
    sun_prior_sp3,
    tC_sp2_closed_form,
    tD_sp3_symbol_check,
    tE_sp4_symbol_check,
    theorem22_am,
    theorem22_bm,
    theorem22_decompose,
    two_squares,
)
from .fp_arith import (
    FieldElement,
    binomial_mod,
    double_factorial_mod,
    factorial_mod,
    fe_add,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_pow,
    fe_sub,
    is_prime,
    legendre,
)
from .fp_linalg import SquareMatrix, det_elimination, det_permutation_oracle, krattenthaler_det
from .qr_determinants import (
    DeterminantFamilyParams,
    build_extended_matrix,
    build_legendre_matrix,
    build_sm_matrix,
    compute_extended_det,
    compute_s,
    compute_sm,
    lemma21_product,
    lemma22_identity_check,
    sm,
    theorem21_product,
)
from .reports import TheoremReport
from .verification import SweepConfig, run_randomized_identities, run_sweep, tier_config

__version__ = "0.1.0"
