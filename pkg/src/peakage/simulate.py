"""Seeded generation of synthetic user careers.

The generating process follows the model's two assumptions: the audience
grows at a constant expected rate on top of ``floor(s)`` followers present
at career start, and each arriving follower's weekly retweet count is a
Poisson draw whose mean decays as ``c * age**(-alpha)`` in the follower's
age.  Ages are discrete and start at 1: a follower arriving in week ``a``
contributes in every week ``t >= a`` with mean ``f(t - a + 1)``.  The
initial audience is the silent crowd of the model's per-follower rate
``F(t) / (s + t)``: it is counted in the follower samples (and so in any
per-follower normalization) but produces no retweets, exactly as the
model's cumulative rate sums over the constant-rate arrivals only.
Retweets are spread uniformly at random over the tweets posted that week.

Randomness comes from numpy's PCG64 generator.  Every career is fully
determined by its seed, and population runs derive one independent stream
per user by mixing the configured seed with the user index through
``numpy.random.SeedSequence``, so simulating users serially or in parallel
yields identical logs.  Within a week the draw order is fixed: arrival
count, then per-follower retweet counts (followers in arrival order), then
tweet allocation.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .events import EventLog, FollowerSample, Retweet, Tweet
from .model import ModelParams

__all__ = ["SimConfig", "simulate_career", "simulate_population", "derived_seed"]


@dataclass(frozen=True)
class SimConfig:
    """Configuration of a synthetic career run."""

    params: ModelParams
    horizon_weeks: int  # career length in weeks, >= 1
    follower_arrival_rate: float = 1.0  # expected new followers per week
    tweets_per_week: int = 1
    n_users: int = 1
    seed: int = 0  # 64-bit unsigned
    deterministic_arrivals: bool = False  # exactly round(rate) arrivals per week

    def __post_init__(self):
        if not isinstance(self.params, ModelParams):
            raise ValueError(f"params must be ModelParams, got {self.params!r}")
        rate = float(self.follower_arrival_rate)
        if not math.isfinite(rate) or rate <= 0.0:
            raise ValueError(f"follower_arrival_rate must be > 0, got {self.follower_arrival_rate!r}")
        object.__setattr__(self, "follower_arrival_rate", rate)
        for name in ("horizon_weeks", "tweets_per_week", "n_users"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        seed = self.seed
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def derived_seed(seed: int, user_index: int) -> int:
    """Per-user seed obtained by mixing the run seed with the user index."""
    ss = np.random.SeedSequence(seed, spawn_key=(user_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def follower_id(user_id, index: int, arrival_week: int) -> str:
    """Stable follower identifier; encodes the arrival week after '.a'."""
    return f"{user_id}.f{index}.a{arrival_week}"


def follower_arrival_week(fid: str) -> int:
    """Arrival week encoded in a simulated follower id."""
    return int(fid.rsplit(".a", 1)[1])


def simulate_career(config: SimConfig, user_id="u0") -> EventLog:
    """Simulate one user's career; deterministic given ``config.seed``.

    The log records the user's join (week 1, the first posting week),
    ``tweets_per_week`` tweets for each week 1..horizon, every retweet,
    and the exact cumulative follower count for weeks 0..horizon (week 0
    holds the initial count).
    """
    p = config.params
    rng = np.random.default_rng(config.seed)
    m = config.tweets_per_week

    initial = int(p.s)  # silent initial audience; sampled but never retweets
    arrival_weeks: list[int] = []
    follower_ids: list[str] = []

    tweets: list[Tweet] = []
    retweets: list[Retweet] = []
    samples: list[FollowerSample] = [FollowerSample(user_id, 0, initial)]

    for week in range(1, config.horizon_weeks + 1):
        week_tweets = [f"{user_id}.t{week}.{j}" for j in range(m)]
        tweets.extend(Tweet(user_id, tid, week) for tid in week_tweets)

        if config.deterministic_arrivals:
            n_new = int(round(config.follower_arrival_rate))
        else:
            n_new = int(rng.poisson(config.follower_arrival_rate))
        start = len(arrival_weeks)
        arrival_weeks.extend([week] * n_new)
        follower_ids.extend(follower_id(user_id, start + k, week) for k in range(n_new))

        ages = week - np.asarray(arrival_weeks, dtype=float) + 1.0
        counts = rng.poisson(p.c * ages**-p.alpha)
        total = int(counts.sum())
        if total:
            sources = np.repeat(np.arange(len(counts)), counts)
            if m > 1:
                slots = rng.integers(0, m, size=total)
            else:
                slots = np.zeros(total, dtype=np.int64)
            retweets.extend(
                Retweet(week_tweets[j], follower_ids[i], week)
                for i, j in zip(sources.tolist(), slots.tolist())
            )

        samples.append(FollowerSample(user_id, week, initial + len(arrival_weeks)))

    return EventLog(tweets, retweets, samples, {user_id: 1})


def simulate_population(config: SimConfig) -> EventLog:
    """Simulate ``config.n_users`` independent careers into one log.

    User ``i`` is named ``u{i}`` and runs on the stream seeded by
    :func:`derived_seed`, so each sub-log equals a standalone
    :func:`simulate_career` with that seed.
    """
    tweets: list[Tweet] = []
    retweets: list[Retweet] = []
    samples: list[FollowerSample] = []
    joins: dict = {}
    for i in range(config.n_users):
        sub = dataclasses.replace(config, seed=derived_seed(config.seed, i), n_users=1)
        log = simulate_career(sub, user_id=f"u{i}")
        tweets.extend(log.tweets)
        retweets.extend(log.retweets)
        samples.extend(log.follower_samples)
        joins.update(log.join_week)
    return EventLog(tweets, retweets, samples, joins)
