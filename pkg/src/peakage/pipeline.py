"""Aggregation of event logs into career curves and follower cohorts.

Retweet-count distributions are heavy-tailed, so weekly aggregates are
medians over users of per-user means: for each user and career week the
mean retweet count of the tweets posted that week (retweets attributed to
the posting week, whenever they happened), then per week the median over
users.  Users are stratified by career length and never mixed across
strata.  Career weeks are 1-based: week 1 is the user's first week.

Cohort extraction groups a user's retweeters by the career week of their
first retweet and tracks each cohort's per-member weekly retweet counts
for the rest of the career.
"""

from __future__ import annotations

import statistics
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass

from .events import EventLog
from .fitting import CohortSeries

__all__ = [
    "CareerCurve",
    "FollowerHistory",
    "UnknownUserError",
    "EmptyAggregateError",
    "effective_join_week",
    "career_length",
    "weekly_user_means",
    "career_curve",
    "follower_histories",
    "interpolate_followers",
    "running_average",
    "extract_cohorts",
    "aggregate_cohorts",
    "aggregate_all_cohorts",
]


class UnknownUserError(LookupError):
    """The user has no tweets in the log."""


class EmptyAggregateError(ValueError):
    """No user contributes a cohort at the requested start week."""


@dataclass(frozen=True)
class CareerCurve:
    """Per-week median of per-user weekly means for one career-length stratum.

    ``stratum`` is the half-open career-length range ``[lo, hi)``;
    ``n_users`` counts the users contributing to each week's median.
    """

    stratum: tuple
    weeks: tuple
    values: tuple
    n_users: tuple

    def __post_init__(self):
        object.__setattr__(self, "stratum", (int(self.stratum[0]), int(self.stratum[1])))
        object.__setattr__(self, "weeks", tuple(int(w) for w in self.weeks))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "n_users", tuple(int(n) for n in self.n_users))
        if not (len(self.weeks) == len(self.values) == len(self.n_users)):
            raise ValueError("weeks, values, and n_users must have equal length")
        if any(b <= a for a, b in zip(self.weeks, self.weeks[1:])):
            raise ValueError("weeks must be strictly increasing")


@dataclass(frozen=True)
class FollowerHistory:
    """A user's follower-count samples, sorted by week."""

    user_id: object
    samples: tuple  # ((week, count), ...)

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple((int(w), c) for w, c in self.samples))
        if not self.samples:
            raise ValueError("history needs at least one sample")
        weeks = [w for w, _ in self.samples]
        if any(b <= a for a, b in zip(weeks, weeks[1:])):
            raise ValueError("sample weeks must be strictly increasing")


def _tweets_by_user(log: EventLog) -> dict:
    by_user: dict = defaultdict(list)
    for t in log.tweets:
        by_user[t.user_id].append(t)
    return by_user


def _tweet_users(log: EventLog) -> dict:
    return {t.tweet_id: t.user_id for t in log.tweets}


def _join_of(log: EventLog, user_id, user_tweets) -> int:
    first_tweet = min(t.week for t in user_tweets)
    explicit = log.join_week.get(user_id)
    # An inconsistent join record never pushes tweets before career week 1.
    return first_tweet if explicit is None else min(explicit, first_tweet)


def effective_join_week(log: EventLog, user_id) -> int:
    """Join week of a user: the explicit record, capped at their first tweet."""
    user_tweets = [t for t in log.tweets if t.user_id == user_id]
    if not user_tweets:
        raise UnknownUserError(f"user {user_id!r} has no tweets in the log")
    return _join_of(log, user_id, user_tweets)


def _last_activity(user_tweets, rt_weeks) -> int:
    last = max(t.week for t in user_tweets)
    if rt_weeks:
        last = max(last, max(rt_weeks))
    return last


def career_length(log: EventLog, user_id) -> int:
    """Last activity week (own tweets or retweets of them) minus join week."""
    user_tweets = [t for t in log.tweets if t.user_id == user_id]
    if not user_tweets:
        raise UnknownUserError(f"user {user_id!r} has no tweets in the log")
    tweet_ids = {t.tweet_id for t in user_tweets}
    rt_weeks = [r.week for r in log.retweets if r.tweet_id in tweet_ids]
    return _last_activity(user_tweets, rt_weeks) - _join_of(log, user_id, user_tweets)


def _weekly_means(user_tweets, join: int, counts: Counter) -> dict:
    by_week: dict = defaultdict(list)
    for t in user_tweets:
        by_week[t.week - join + 1].append(counts.get(t.tweet_id, 0))
    return {w: sum(vals) / len(vals) for w, vals in by_week.items()}


def weekly_user_means(log: EventLog, user_id) -> dict:
    """Mean retweet count of the user's tweets, keyed by career week.

    Only weeks in which the user tweeted appear; a tweet's retweets count
    toward the week it was posted regardless of when they happened.
    """
    user_tweets = [t for t in log.tweets if t.user_id == user_id]
    if not user_tweets:
        raise UnknownUserError(f"user {user_id!r} has no tweets in the log")
    tweet_ids = {t.tweet_id for t in user_tweets}
    counts = Counter(r.tweet_id for r in log.retweets if r.tweet_id in tweet_ids)
    return _weekly_means(user_tweets, _join_of(log, user_id, user_tweets), counts)


def career_curve(log: EventLog, stratum, normalize: bool = False, histories=None) -> CareerCurve:
    """Median-of-means curve over the users whose career length is in ``stratum``.

    ``stratum`` is a half-open ``(lo, hi)`` range of career lengths.  With
    ``normalize=True`` each user-week mean is divided by the user's
    interpolated follower count at that week (``histories`` maps user ids
    to :class:`FollowerHistory`); users without a history are excluded
    with a warning, and user-weeks with a non-positive interpolated count
    are skipped.  An empty stratum yields an empty curve.
    """
    lo, hi = int(stratum[0]), int(stratum[1])
    if lo <= 0 or hi <= lo:
        raise ValueError(f"stratum bounds must satisfy 0 < lo < hi, got ({lo}, {hi})")
    if normalize and histories is None:
        histories = follower_histories(log)

    counts = Counter(r.tweet_id for r in log.retweets)
    tweet_users = _tweet_users(log)
    rt_weeks_by_user: dict = defaultdict(list)
    for r in log.retweets:
        rt_weeks_by_user[tweet_users[r.tweet_id]].append(r.week)

    per_week: dict = defaultdict(list)
    for user_id, user_tweets in _tweets_by_user(log).items():
        join = _join_of(log, user_id, user_tweets)
        length = _last_activity(user_tweets, rt_weeks_by_user.get(user_id, ())) - join
        if not lo <= length < hi:
            continue
        means = _weekly_means(user_tweets, join, counts)
        if normalize:
            history = histories.get(user_id)
            if history is None:
                warnings.warn(
                    f"user {user_id!r} has no follower history; excluded from normalized curve",
                    stacklevel=2,
                )
                continue
            for week, mean in means.items():
                followers = interpolate_followers(history, join + week - 1)
                if followers <= 0.0:
                    continue
                per_week[week].append(mean / followers)
        else:
            for week, mean in means.items():
                per_week[week].append(mean)

    weeks = sorted(per_week)
    values = [float(statistics.median(per_week[w])) for w in weeks]
    return CareerCurve((lo, hi), weeks, values, [len(per_week[w]) for w in weeks])


def follower_histories(log: EventLog) -> dict:
    """Build one :class:`FollowerHistory` per sampled user.

    Multiple samples of one user-week collapse to the last one recorded.
    """
    by_user: dict = defaultdict(dict)
    for s in log.follower_samples:
        by_user[s.user_id][s.week] = s.count
    return {
        user: FollowerHistory(user, tuple(sorted(weeks.items())))
        for user, weeks in by_user.items()
    }


def interpolate_followers(history: FollowerHistory, week) -> float:
    """Follower count at ``week``: linear between samples, constant beyond."""
    samples = history.samples
    if week <= samples[0][0]:
        return float(samples[0][1])
    if week >= samples[-1][0]:
        return float(samples[-1][1])
    for (w0, c0), (w1, c1) in zip(samples, samples[1:]):
        if w0 <= week <= w1:
            if week == w0:
                return float(c0)
            if week == w1:
                return float(c1)
            return c0 + (c1 - c0) * (week - w0) / (w1 - w0)
    raise AssertionError("unreachable: samples are sorted")


def running_average(values, width: int):
    """Centered moving average; windows truncate at the boundaries.

    ``width`` must be odd and positive.  Output length equals input
    length; width 1 is the identity.
    """
    if isinstance(width, bool) or not isinstance(width, int) or width < 1 or width % 2 == 0:
        raise ValueError(f"width must be a positive odd integer, got {width!r}")
    values = [float(v) for v in values]
    half = width // 2
    out = []
    for i in range(len(values)):
        window = values[max(0, i - half) : i + half + 1]
        out.append(sum(window) / len(window))
    return out


def extract_cohorts(log: EventLog, user_id) -> list[CohortSeries]:
    """Group the user's retweeters by the career week of their first retweet.

    For each start week the cohort's value at age ``k`` is the number of
    retweets of the user's tweets (posted any time) made by cohort members
    in career week ``start_week + k - 1``, divided by cohort size; the
    series runs to the end of the user's career.  Users with no retweets
    yield an empty list.
    """
    user_tweets = [t for t in log.tweets if t.user_id == user_id]
    if not user_tweets:
        raise UnknownUserError(f"user {user_id!r} has no tweets in the log")
    tweet_ids = {t.tweet_id for t in user_tweets}
    join = _join_of(log, user_id, user_tweets)

    weeks_by_follower: dict = defaultdict(list)
    for r in log.retweets:
        if r.tweet_id in tweet_ids:
            weeks_by_follower[r.follower_id].append(r.week - join + 1)
    if not weeks_by_follower:
        return []

    end_week = max(
        max(t.week - join + 1 for t in user_tweets),
        max(w for ws in weeks_by_follower.values() for w in ws),
    )

    members_by_start: dict = defaultdict(list)
    for follower, weeks in weeks_by_follower.items():
        members_by_start[min(weeks)].append(follower)

    cohorts = []
    for start_week in sorted(members_by_start):
        members = members_by_start[start_week]
        size = len(members)
        week_counts = Counter(w for f in members for w in weeks_by_follower[f])
        n_ages = end_week - start_week + 1
        values = [week_counts.get(start_week + k, 0) / size for k in range(n_ages)]
        cohorts.append(
            CohortSeries(start_week, range(1, n_ages + 1), values, [1] * n_ages)
        )
    return cohorts


def aggregate_cohorts(per_user, start_week: int) -> CohortSeries:
    """Median across users of the per-user cohort statistic at ``start_week``.

    ``per_user`` is an iterable of per-user cohort lists (one list per
    user, as returned by :func:`extract_cohorts`).  Each age's value is
    the median over the users whose series covers that age; ``support``
    records the contributor counts.
    """
    matching = [s for series_list in per_user for s in series_list if s.start_week == start_week]
    if not matching:
        raise EmptyAggregateError(f"no user contributes a cohort at start week {start_week}")
    by_age: dict = defaultdict(list)
    for series in matching:
        for age, value in zip(series.ages, series.values):
            by_age[age].append(value)
    ages = sorted(by_age)
    values = [float(statistics.median(by_age[a])) for a in ages]
    return CohortSeries(start_week, ages, values, [len(by_age[a]) for a in ages])


def aggregate_all_cohorts(per_user) -> list[CohortSeries]:
    """Aggregate every start week present in ``per_user``, in week order."""
    per_user = [list(series_list) for series_list in per_user]
    start_weeks = sorted({s.start_week for series_list in per_user for s in series_list})
    return [aggregate_cohorts(per_user, w) for w in start_weeks]
