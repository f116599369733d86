"""Fuzzy random variables on the real line and a weak law of large numbers.

Levels of fuzzy numbers are intervals; sums, scalings, Hausdorff
distances and support functions are computed level by level.
"""
from fuzzylln.fuzzy import (
    AlphaKnot,
    AlphaPartition,
    FuzzyNumber,
    add,
    check_valid,
    crisp,
    d_h_infty,
    epsilon_partition,
    format_fuzzy,
    level_plus,
    level_set,
    make_triangular,
    minkowski_mean,
    norm_F,
    parse_fuzzy,
    scale_fuzzy,
    uniform_grid,
)
from fuzzylln.intervals import (
    Direction,
    Interval,
    dist_point,
    hausdorff,
    minkowski_add,
    norm_K,
    scale,
    support,
)
from fuzzylln.lln import (
    StudyResult,
    TrialResult,
    convergence_study,
    decomposition_diagnostic,
    exact_tail_cosine,
    run_trial,
    tail_probability,
)
from fuzzylln.models import (
    CovReport,
    ModelSpec,
    analytic_expectation,
    estimate_cov,
    mc_expectation,
    sample,
    support_sample,
    uncorrelatedness_report,
    variance_condition,
    variance_of_support,
)

__version__ = "0.1.0"
