"""Multiresolution analysis of incomplete rankings.

Functions on duplicate-free ranking words decompose into one block per item
subset; this package provides the exact filter coefficients, the fast
analysis and synthesis transforms, an unbiased block-wise estimator for
censored data, feature-space smoothing, and a structural validation suite.
"""

from .datasets import Dataset, parse_dataset, parse_ranking_line, serialize_dataset
from .errors import (
    AuditFailure,
    DomainError,
    ParseError,
    RankMRAError,
    ResourceLimitError,
)
from .functions import RankingFunction
from .inference import (
    estimate_marginal,
    generate_dataset,
    identifiable_support,
    per_group_features,
    solution_space,
    wavelet_empirical_estimator,
)
from .marginals import (
    biased_estimator,
    linear_extension_embed,
    marginal,
    marginal_based_estimator,
    naive_empirical_marginal,
    similarity_matrix_Tnu,
)
from .smoothing import kernel_smooth, local_regularize, subset_distance, transport
from .transform import (
    AlphaTable,
    OpCounter,
    WaveletCoefficients,
    alpha,
    alpha_matrix,
    build_alpha_table,
    count_ops,
    default_table,
    feature_marginal,
    fwt,
    fwt_single,
    high_pass,
    low_pass,
    synthesize,
)
from .words import (
    content,
    contiguous_subwords,
    derangement,
    downward_closure,
    enumerate_rankings,
    induce,
    is_subword,
    storage_bound,
)

__version__ = "1.0.0"

__all__ = [
    "AlphaTable",
    "AuditFailure",
    "Dataset",
    "DomainError",
    "OpCounter",
    "ParseError",
    "RankMRAError",
    "RankingFunction",
    "ResourceLimitError",
    "WaveletCoefficients",
    "alpha",
    "alpha_matrix",
    "biased_estimator",
    "build_alpha_table",
    "content",
    "contiguous_subwords",
    "count_ops",
    "default_table",
    "derangement",
    "downward_closure",
    "enumerate_rankings",
    "estimate_marginal",
    "feature_marginal",
    "fwt",
    "fwt_single",
    "generate_dataset",
    "high_pass",
    "identifiable_support",
    "induce",
    "is_subword",
    "kernel_smooth",
    "linear_extension_embed",
    "local_regularize",
    "low_pass",
    "marginal",
    "marginal_based_estimator",
    "naive_empirical_marginal",
    "parse_dataset",
    "parse_ranking_line",
    "per_group_features",
    "serialize_dataset",
    "similarity_matrix_Tnu",
    "solution_space",
    "storage_bound",
    "subset_distance",
    "synthesize",
    "transport",
    "wavelet_empirical_estimator",
    "__version__",
]
