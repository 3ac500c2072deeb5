"""Power-law fits of cohort retweet curves.

A cohort curve is fit as ``value = c * age**(-alpha)`` by ordinary least
squares on (log age, log value) over the strictly positive values; weeks
with value 0 are dropped, not smoothed, and the regression is unweighted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CohortSeries",
    "PowerLawFit",
    "InsufficientDataError",
    "MIN_FIT_POINTS",
    "fit_power_law",
    "fit_all_cohorts",
]

# Minimum strictly positive points for a meaningful slope plus diagnostic.
MIN_FIT_POINTS = 3


class InsufficientDataError(ValueError):
    """Fewer positive points than a power-law fit requires."""


@dataclass(frozen=True)
class CohortSeries:
    """Weekly retweet statistic of one follower cohort.

    ``start_week`` is the career week of the cohort's first retweet,
    ``ages`` counts weeks since then (1-based), ``values`` holds the
    per-member retweet statistic, and ``support`` the number of users
    behind each entry (1 for single-user series, contributor counts after
    aggregation).
    """

    start_week: int
    ages: tuple
    values: tuple
    support: tuple

    def __post_init__(self):
        object.__setattr__(self, "ages", tuple(int(a) for a in self.ages))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "support", tuple(int(n) for n in self.support))
        if self.start_week < 1:
            raise ValueError(f"start_week must be >= 1, got {self.start_week!r}")
        if not (len(self.ages) == len(self.values) == len(self.support)):
            raise ValueError("ages, values, and support must have equal length")
        if any(a < 1 for a in self.ages):
            raise ValueError("ages must be positive")
        if any(b <= a for a, b in zip(self.ages, self.ages[1:])):
            raise ValueError("ages must be strictly increasing")
        if any(v < 0.0 for v in self.values):
            raise ValueError("values must be non-negative")


@dataclass(frozen=True)
class PowerLawFit:
    """Fitted ``c * t**(-alpha)`` with log-log goodness of fit."""

    c_hat: float
    alpha_hat: float
    r_squared: float
    n_points: int


def fit_power_law(series: CohortSeries) -> PowerLawFit:
    """Least-squares power-law fit of a cohort curve in log-log space."""
    pairs = [(a, v) for a, v in zip(series.ages, series.values) if v > 0.0]
    if len(pairs) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"need >= {MIN_FIT_POINTS} positive values, got {len(pairs)}"
        )
    x = np.log([a for a, _ in pairs])
    y = np.log([v for _, v in pairs])
    x_bar = x.mean()
    y_bar = y.mean()
    slope = float(((x - x_bar) * (y - y_bar)).sum() / ((x - x_bar) ** 2).sum())
    intercept = y_bar - slope * x_bar
    residual = y - (slope * x + intercept)
    ss_res = float((residual**2).sum())
    ss_tot = float(((y - y_bar) ** 2).sum())
    if ss_tot == 0.0:
        r_squared = 1.0  # exact fit of a constant series
    else:
        r_squared = min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    return PowerLawFit(float(np.exp(intercept)), -slope, r_squared, len(pairs))


def fit_all_cohorts(cohorts) -> tuple[list[tuple[int, PowerLawFit]], list[tuple[int, str]]]:
    """Fit every eligible cohort, ordered by start week.

    Returns ``(fits, skipped)`` where ``fits`` pairs each start week with
    its fit and ``skipped`` records the start week and reason for every
    cohort that could not be fit.
    """
    fits: list[tuple[int, PowerLawFit]] = []
    skipped: list[tuple[int, str]] = []
    for series in sorted(cohorts, key=lambda s: s.start_week):
        try:
            fits.append((series.start_week, fit_power_law(series)))
        except InsufficientDataError as exc:
            skipped.append((series.start_week, str(exc)))
    return fits, skipped
