from .generator import (
    STREAM_DATA,
    STREAM_DESIGN,
    STREAM_ESTIMATORS,
    STREAM_FROZEN_INTERACTIONS,
    STREAM_INTERACTIONS,
    ModelSpec,
    generate,
    true_tau,
    true_tau_with_se,
)
from .models import (
    MODELS,
    AdditiveModel,
    HeterogeneousModel,
    LinearModel,
    NonAdditiveModel,
    OutcomeModel,
    apply_interactions,
    covariance_root,
    get_model,
    interaction_plan,
)
from .savings_twin import (
    TWIN_SCHEMA,
    SavingsTwin,
    make_savings_twin,
    stratum_profile,
    write_savings_twin,
)
from .study import SUMMARY_COLUMNS, SimSummary, SummaryRow, run_study, summarize
from .suite import EstimatorConfig, EstimatorKind, build_suite


__all__ = [
    "MODELS",
    "STREAM_DATA",
    "STREAM_DESIGN",
    "STREAM_ESTIMATORS",
    "STREAM_FROZEN_INTERACTIONS",
    "STREAM_INTERACTIONS",
    "SUMMARY_COLUMNS",
    "TWIN_SCHEMA",
    "AdditiveModel",
    "EstimatorConfig",
    "EstimatorKind",
    "HeterogeneousModel",
    "LinearModel",
    "ModelSpec",
    "NonAdditiveModel",
    "OutcomeModel",
    "SavingsTwin",
    "SimSummary",
    "SummaryRow",
    "apply_interactions",
    "build_suite",
    "covariance_root",
    "generate",
    "get_model",
    "interaction_plan",
    "make_savings_twin",
    "run_study",
    "stratum_profile",
    "summarize",
    "true_tau",
    "true_tau_with_se",
    "write_savings_twin",
]
