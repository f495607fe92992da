"""AUC-risk optimization via a univariate surrogate loss.

The heavy lifting lives in the compiled `_core` extension; this package
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    Dataset,
    DivergenceError,
    LinearModel,
    ParseFormatError,
    ValidationError,
    __version__,
    apply_scaling,
    auc_risk_pairwise,
    auc_risk_rank,
    binarize_by_class_partition,
    bound_constants,
    dataset_from_dense,
    load_libsvm,
    make_gaussian_2class,
    objective_value,
    pairwise_surrogate_risk,
    parse_libsvm,
    run_eval,
    serialize_libsvm,
    standardize,
    subsample_split,
    surrogate_sorted,
    surrogate_variational,
    svm_objective,
    topk_sum_direct,
    topk_sum_variational,
    train_batch,
    train_online,
    train_pairwise_hinge,
    verify_quantile_identity,
    verify_population_bound,
)
