"""Acceptance sampling plans for truncated life tests under inverse Weibull lifetimes."""

from .design import (
    DesignOutcome,
    RiskSpec,
    SearchBounds,
    design_double,
    design_group,
    design_single,
    misspec_probabilities,
    percentile_multiplier,
)
from .distributions import (
    LifetimeModel,
    QualitySetting,
    failure_prob,
    failure_prob_percentile,
    iw_cdf,
    iw_median,
    iw_pdf,
    iw_quantile,
)
from .errors import DataError, DomainError, FitError
from .fitting import (
    MODEL_ORDER,
    FitResult,
    LifetimeSample,
    best_by_ks,
    fit_inverse_weibull,
    fit_loglogistic,
    fit_lognormal,
    fit_weibull,
    goodness_table,
    ks_statistic,
)
from .plans import (
    DoublePlan,
    GroupPlan,
    OCPoint,
    PlanEvaluation,
    SinglePlan,
    binom_cdf_tail,
    double_accept_prob,
    double_asn,
    first_decision_prob,
    group_accept_prob,
    oc_curve,
    single_accept_prob,
)
from .simulate import (
    SimConfig,
    SimReport,
    sample_lifetime,
    simulate_double,
    simulate_group,
    simulate_single,
)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "DesignOutcome",
    "DomainError",
    "DoublePlan",
    "FitError",
    "FitResult",
    "GroupPlan",
    "LifetimeModel",
    "LifetimeSample",
    "MODEL_ORDER",
    "OCPoint",
    "PlanEvaluation",
    "QualitySetting",
    "RiskSpec",
    "SearchBounds",
    "SimConfig",
    "SimReport",
    "SinglePlan",
    "best_by_ks",
    "binom_cdf_tail",
    "design_double",
    "design_group",
    "design_single",
    "double_accept_prob",
    "double_asn",
    "failure_prob",
    "failure_prob_percentile",
    "first_decision_prob",
    "fit_inverse_weibull",
    "fit_loglogistic",
    "fit_lognormal",
    "fit_weibull",
    "goodness_table",
    "group_accept_prob",
    "iw_cdf",
    "iw_median",
    "iw_pdf",
    "iw_quantile",
    "ks_statistic",
    "misspec_probabilities",
    "oc_curve",
    "percentile_multiplier",
    "sample_lifetime",
    "simulate_double",
    "simulate_group",
    "simulate_single",
    "single_accept_prob",
]
