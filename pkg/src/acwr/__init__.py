"""Acute:chronic workload ratio toolkit.

Ratio engines (rolling and EWMA, coupled and uncoupled), the safe-load
planning calculator, synthetic injury-study simulators with bias
corrections, zone/sparse-data audits, and the CLI/service plumbing around
them.
"""

from .audit import (
    SparseAudit,
    SparseEvent,
    Zone,
    ZoneScheme,
    classify,
    discretize_after,
    ioc_zones,
    sparse_audit,
)
from .ewma import (
    BurnIn,
    EwmaParams,
    Fixed,
    FirstLoad,
    WeightTable,
    Zero,
    chronic_ratio_contribution,
    convergence_analysis,
    convergence_day,
    ewma,
    initial_weight_dominates,
    lambda_from_n,
    weight_table,
    windowed_ewma,
)
from .loadlog import AthleteLog, IngestResult, LoadLogError, ingest, write_load_log
from .planner import (
    PlanRequest,
    PlanResult,
    PlanStatus,
    max_safe_acute,
    project_schedule,
)
from .ratios import (
    MethodConfig,
    RatioMethod,
    RatioPoint,
    acratio_ewma_coupled,
    acratio_ewma_uncoupled,
    acratio_rolling,
    ratio_series,
    weekly_block_ratio,
)
from .studysim import (
    AthleteOutcome,
    CohortSpec,
    ConstantHazard,
    CrossoverRecord,
    LinearHazard,
    MatchedPair,
    Mitigation,
    ScriptedInjury,
    WeeklySchedule,
    apply_mitigation,
    audit_no_post_event_data,
    bias_gap,
    build_case_crossover,
    build_nested_case_control,
    simulate_cohort,
    weekly_bias_report,
)
from .timeseries import (
    Coupling,
    Weekday,
    WeeklyBlocks,
    WindowConfig,
    WorkloadSeries,
    rolling_daily_mean,
    to_weekly_blocks,
)

__version__ = "0.1.0"
