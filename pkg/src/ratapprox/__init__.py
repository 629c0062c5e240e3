"""Data-driven rational approximation of |x| on [-1, 1].

Builds rational approximants from sampled data through the Loewner framework
(with split/alternating/identical data partitions, Hermite diagonals, and
rectangular extensions), the greedy AAA iteration, and the explicit Newman
construction; computes exact maximum approximation errors by a generalized
eigenvalue method; and refines Loewner fits iteratively at fixed order.
"""
from .aaa import AaaTrace, BarycentricForm, aaa_fit, aaa_realization, bary_eval, bary_eval_grid
from .bounds import BoundKind, bound_value
from .dataset import (
    MeasurementSet,
    PartitionScheme,
    PartitionedData,
    add_origin,
    add_pair,
    partition,
    read_measurements_csv,
    sample_abs,
    sample_function,
)
from .errors import (
    ConfigError,
    ConversionError,
    DataError,
    DegenerateModelError,
    DomainError,
    KernelError,
    PoleProximityError,
    RatApproxError,
    SolveError,
)
from .iterative import IterationTrace, loewner_iterate
from .loewner import (
    LoewnerPencil,
    RationalApproximant,
    SvdTruncation,
    build_pencil,
    count_significant_svals,
    evaluate,
    evaluate_grid,
    factorize,
    model_from_json,
    model_to_json,
    realize,
    svd_truncate,
    to_standard,
)
from .maxerror import ErrorReport, extrema_candidates, grid_max_error, max_error
from .newman import NewmanApproximant, newman_eval, newman_interpolation_pairs, newman_measurements
from .sampling import (
    EllipticModulus,
    IntervalConfig,
    PointFamily,
    chebyshev_points,
    complete_elliptic_Kprime,
    generate_points,
    jacobi_sn_cn,
    linspace_points,
    logspace_points,
    newman_points,
    symmetric_extend,
    zolotarev_points,
)

__version__ = "0.1.0"
