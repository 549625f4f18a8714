__version__ = "0.1.0"

# Closed forms
from .Analytic import (
    EveAnalytics,
    eve_added_error,
    eve_analytics,
    eve_key_fraction,
    eve_p1,
    eve_p2,
    eve_p3,
    fidelity,
    mean_qundit_fidelity,
    qundit_fidelity,
    required_x,
    separation_exceeds_width,
    slices_overlap,
    small_y_approx,
    span_exceeds_width,
)

# Configuration files
from .ConfigFile import load_physical_config, parse_physical_config
from .Errors import AccuracyError, ConfigFileError, DomainError

# Eavesdropping
from .Eve import (
    Absent,
    EveBranch,
    EveStrategy,
    FullInterceptResend,
    Interception,
    TimeSliceAttack,
    eve_branches,
    eve_intercept,
)
from .Measurement import decode_distribution, reading_distribution, sample_measurement
from .Oracle import baseline_qber, oracle_expectations, oracle_tally

# Sessions
from .Protocol import (
    BLOCK_SIZE,
    SessionConfig,
    TrialBatch,
    TrialRecord,
    run_session,
    sift,
    simulate_block,
)

# Geometry
from .PulseModel import (
    Basis,
    BinGrid,
    DimensionlessParams,
    Finding,
    PhysicalConfig,
    Severity,
    bin_grid,
    to_dimensionless,
    validate,
)
from .Report import OutputRow, format_value, parse_csv, render_csv, render_json

# Special functions
from .SpecFun import (
    Interval,
    erf,
    erf_inv,
    erfc,
    gaussian_density,
    gaussian_interval_prob,
    quadrature,
)
from .Stats import Estimate, SessionStats, Tally, agreement, summarize, wilson_interval

__all__ = [
    # Analytic
    "EveAnalytics",
    "eve_added_error",
    "eve_analytics",
    "eve_key_fraction",
    "eve_p1",
    "eve_p2",
    "eve_p3",
    "fidelity",
    "mean_qundit_fidelity",
    "qundit_fidelity",
    "required_x",
    "separation_exceeds_width",
    "slices_overlap",
    "small_y_approx",
    "span_exceeds_width",
    # ConfigFile
    "load_physical_config",
    "parse_physical_config",
    # Errors
    "AccuracyError",
    "ConfigFileError",
    "DomainError",
    # Eve
    "Absent",
    "EveBranch",
    "EveStrategy",
    "FullInterceptResend",
    "Interception",
    "TimeSliceAttack",
    "eve_branches",
    "eve_intercept",
    # Measurement
    "decode_distribution",
    "reading_distribution",
    "sample_measurement",
    # Oracle
    "baseline_qber",
    "oracle_expectations",
    "oracle_tally",
    # Protocol
    "BLOCK_SIZE",
    "SessionConfig",
    "TrialBatch",
    "TrialRecord",
    "run_session",
    "sift",
    "simulate_block",
    # PulseModel
    "Basis",
    "BinGrid",
    "DimensionlessParams",
    "Finding",
    "PhysicalConfig",
    "Severity",
    "bin_grid",
    "to_dimensionless",
    "validate",
    # Report
    "OutputRow",
    "format_value",
    "parse_csv",
    "render_csv",
    "render_json",
    # SpecFun
    "Interval",
    "erf",
    "erf_inv",
    "erfc",
    "gaussian_density",
    "gaussian_interval_prob",
    "quadrature",
    # Stats
    "Estimate",
    "SessionStats",
    "Tally",
    "agreement",
    "summarize",
    "wilson_interval",
]
