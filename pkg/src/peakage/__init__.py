"""Modeling and analysis of per-follower engagement over social media careers.

The package has five parts: closed-form evaluation of the power-law
audience-interest model and its peak-age solver (:mod:`peakage.model`),
seeded synthetic career generation (:mod:`peakage.simulate`), event-log
records and serialization (:mod:`peakage.events`), the aggregation
pipeline from logs to career curves and follower cohorts
(:mod:`peakage.pipeline`), and power-law fitting of cohort curves
(:mod:`peakage.fitting`).  ``peakage`` on the command line ties them
together.
"""

from .events import (
    EventLog,
    FollowerSample,
    MalformedLineWarning,
    MalformedLogError,
    Retweet,
    Tweet,
    read_event_log,
    write_event_log,
)
from .fitting import (
    CohortSeries,
    InsufficientDataError,
    PowerLawFit,
    fit_all_cohorts,
    fit_power_law,
)
from .model import (
    ModelParams,
    PeakAge,
    cumulative_rate,
    discrete_cumulative,
    discrete_per_follower,
    extremum_gap,
    follower_rate,
    peak_age,
    per_follower_rate,
    rate_bound,
)
from .pipeline import (
    CareerCurve,
    EmptyAggregateError,
    FollowerHistory,
    UnknownUserError,
    aggregate_all_cohorts,
    aggregate_cohorts,
    career_curve,
    career_length,
    effective_join_week,
    extract_cohorts,
    follower_histories,
    interpolate_followers,
    running_average,
    weekly_user_means,
)
from .simulate import SimConfig, derived_seed, simulate_career, simulate_population

__version__ = "0.1.0"

__all__ = [
    "CareerCurve",
    "CohortSeries",
    "EmptyAggregateError",
    "EventLog",
    "FollowerHistory",
    "FollowerSample",
    "InsufficientDataError",
    "MalformedLineWarning",
    "MalformedLogError",
    "ModelParams",
    "PeakAge",
    "PowerLawFit",
    "Retweet",
    "SimConfig",
    "Tweet",
    "UnknownUserError",
    "aggregate_all_cohorts",
    "aggregate_cohorts",
    "career_curve",
    "career_length",
    "cumulative_rate",
    "derived_seed",
    "discrete_cumulative",
    "discrete_per_follower",
    "effective_join_week",
    "extract_cohorts",
    "extremum_gap",
    "fit_all_cohorts",
    "fit_power_law",
    "follower_histories",
    "follower_rate",
    "interpolate_followers",
    "peak_age",
    "per_follower_rate",
    "rate_bound",
    "read_event_log",
    "running_average",
    "simulate_career",
    "simulate_population",
    "weekly_user_means",
    "write_event_log",
]
