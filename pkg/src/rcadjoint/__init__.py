"""Rankin-Cohen brackets on truncated q-expansions and special values
of the adjoint-map coefficient formula."""

from .qseries import (
    CharacterMod4,
    FormMeta,
    QSeries,
    Rational,
    apply_D,
    make_eisenstein,
    make_eta_product,
    make_theta,
    series_add,
    series_mul,
)
from .bracket import (
    BracketParams,
    TwiceWeight,
    alpha_coeff,
    gamma_ratio,
    rc_bracket,
    rc_coefficient,
)
from .forms import catalog_get, check_cusp_at_infinity, check_hecke_multiplicativity
from .adjoint import (
    AdjointCase,
    CaseId,
    LValue,
    TailProfile,
    adjoint_coefficients,
    case_params,
    fit_tail_profile,
    l_series_value,
    validate_hypotheses,
)
from .verify import (
    RatioReport,
    lambda_from_first_coefficient,
    ratio_test,
    rewritten_sum_report,
)

__version__ = "0.1.0"

__all__ = [
    "AdjointCase",
    "BracketParams",
    "CaseId",
    "CharacterMod4",
    "FormMeta",
    "LValue",
    "QSeries",
    "Rational",
    "RatioReport",
    "TailProfile",
    "TwiceWeight",
    "adjoint_coefficients",
    "alpha_coeff",
    "apply_D",
    "case_params",
    "catalog_get",
    "check_cusp_at_infinity",
    "check_hecke_multiplicativity",
    "fit_tail_profile",
    "gamma_ratio",
    "l_series_value",
    "lambda_from_first_coefficient",
    "make_eisenstein",
    "make_eta_product",
    "make_theta",
    "ratio_test",
    "rc_bracket",
    "rc_coefficient",
    "rewritten_sum_report",
    "series_add",
    "series_mul",
    "validate_hypotheses",
]
