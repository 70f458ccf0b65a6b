"""p-adic hypergeometric functions of logarithmic type."""

from .congruence import (
    CongruenceReport,
    default_corpus,
    run_suite,
    verify_dwork_coefficient_congruence,
    verify_dwork_congruence,
    verify_key_lemma,
    verify_log_congruence,
    verify_ratio_continuity,
    verify_unitroot_expansion,
)
from .curve import (
    CurveEigenData,
    LambdaSeries,
    endpoint_vanishing_crosscheck,
    epsilon_from_E,
    hg_ode_residual,
    hg_series_lambda,
    solve_E_tau,
    solve_G_tau,
)
from .hyperseries import (
    CoefficientTable,
    ExactSeries,
    HGParams,
    IntegralityError,
    InvariantViolation,
    SpecialValueResult,
    ValueUndefined,
    check_dwork_conditions,
    coeff_C,
    coeff_D,
    constant_D0,
    dwork_ratio,
    gauss_unit_check,
    special_value,
    truncated_eval,
    truncated_ratios,
)
from .padic import (
    BudgetExceeded,
    DworkOrbit,
    PAdicError,
    PAdicNumber,
    PrecisionError,
    braces_pochhammer,
    dwork_orbit,
    dwork_prime,
    iwasawa_log_oneunit,
    padic_digit,
    pochhammer,
    psi_tilde,
    reduce_rational,
)

__version__ = "0.1.0"
