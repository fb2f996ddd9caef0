from loguru import logger

from .base import (
    ComputationBudgetExceeded,
    ConvergentOverflow,
    DuplicatePointsWarning,
    GapstatWarning,
    InsufficientConvergents,
    NearRationalWarning,
    NonFiniteGapSpectrum,
    PointSet,
    PrecisionBudgetExceeded,
    SaturatedStatisticWarning,
    SequenceGenerator,
    SequenceSpec,
    ThreeGapMismatch,
    UnknownSequenceKind,
)
from .config import ExperimentConfig, NGrid, experiment_config_from_dict
from .continued_fractions import (
    GOLDEN_MEAN,
    SQRT2,
    SQRT3,
    CFExpansion,
    OstrowskiDigits,
    PreciseReal,
    approximation_error,
    cf_expand,
    convergent_bounds_hold,
    convergents,
    golden_intermediate_window,
    named_constant,
    ostrowski_expand,
    ostrowski_expand_many,
    ostrowski_valid,
    torus_norm,
)
from .discrepancy import (
    DiscrepancyReport,
    GapBoundReport,
    PCBoundReport,
    extreme_discrepancy_1d,
    gap_based_bound,
    pc_based_bound,
    random_box_lower_bound,
    star_discrepancy_1d,
    star_discrepancy_md,
    star_discrepancy_prefixes,
    vdc_counting_deviation,
)
from .gaps import (
    GapSpectrum,
    ThreeGapPrediction,
    check_obstructions,
    classify_gaps,
    classify_spectra,
    gap_spectrum,
    kronecker_gap_bounds,
    three_gap_predict,
)
from .generators import generate, parse_sequence_spec, sequence_kinds, sort_ascending
from .pair_correlation import (
    alpha_trend,
    classical_pair_correlation,
    deviation_statistic,
    number_variance_curve,
    pair_correlation,
    pair_count,
    pair_counts,
)
from .reporting import archive_results, emit_report, parse_report
from .suites import (
    SuiteOptions,
    VerificationSuite,
    VerificationSuiteResult,
    run_suites,
    verification_suites,
)
from .cli import run_command

# Silent when used as a library; the CLI turns logging on.
logger.disable("gapstat")
