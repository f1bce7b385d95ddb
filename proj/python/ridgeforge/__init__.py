"""Ridge regression with per-eigendirection shrinkage.

Thin wrapper over the compiled extension: fitting in the eigenbasis of X'X,
scalar-risk and goodness-of-fit analysis, shrinkage selection rules, matrix-MSE
dominance comparisons and deterministic pairs-bootstrap intervals.
"""

from ridgeforge._core import (
    AugmentedFit,
    BootstrapConfig,
    BootstrapSummary,
    CanonicalForm,
    DataError,
    Dataset,
    DominanceTag,
    DominanceVerdict,
    EigenSystem,
    GofReport,
    Grid,
    NumericError,
    OlsFit,
    RidgeFit,
    RiskProfile,
    SelectionResult,
    SelectionRule,
    ShrinkageSpec,
    SingleMin,
    SpecKind,
    TraceMode,
    TraceSeries,
    TransformMode,
    TransformSpec,
    UsageError,
    __version__,
    apply_transform,
    augmented_fit,
    bootstrap_intervals,
    canonicalize,
    compare_specs,
    comparison_diagonal,
    corollary_checks,
    describe,
    gof_limit_single,
    gof_of,
    gof_value,
    invert_transform,
    k_grid_min,
    k_hk,
    k_hkb,
    load_csv,
    mse_of,
    mse_ols,
    mse_single_limit,
    mse_single_min,
    ols_fit,
    per_coordinate,
    quantile,
    resolved_threads,
    ridge_fit,
    shrink_limit,
    single_min,
    single_min_table,
    trace_series,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
