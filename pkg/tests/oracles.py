"""Independent reference implementations used to check the library.

Nothing here reuses library code paths for the quantity under test: the
quadrature oracle integrates numerically, the peak oracle scans a dense
grid, and the pipeline oracles recompute aggregates straight from raw
record tuples.
"""

from __future__ import annotations

import numpy as np

from peakage.events import EventLog
from peakage.model import per_follower_rate


def adaptive_simpson(f, a, b, rel_tol=1e-12, max_depth=60):
    """Adaptive Simpson quadrature of ``f`` over [a, b] with Richardson correction."""
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = rel_tol * max(abs(whole), 1e-12)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2.0, depth + 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def grid_peak(params, step=1e-3, start_span=8.0, max_span=2.0**24):
    """Dense-grid argmax of the per-follower rate, extending past the peak.

    Returns ``(t_at_max, n_interior_maxima)``.  The grid starts at 0 (the
    rate is 0 there for s > 0) and the span doubles until the argmax sits
    safely away from the right edge.
    """
    span = max(start_span, 4.0 * params.epsilon)
    while True:
        ts = np.arange(0.0, span + step, step)
        if params.s == 0.0:
            ts = ts[1:]
        g = per_follower_rate(params, ts)
        i = int(np.argmax(g))
        if i < len(ts) - max(2, len(ts) // 100):
            return float(ts[i]), count_interior_maxima(g)
        if span > max_span:
            raise RuntimeError(f"no interior peak below t={span}")
        span *= 2.0


def count_interior_maxima(values) -> int:
    """Strict rises followed by strict falls, with plateaus collapsed."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return 0
    keep = np.concatenate(([True], np.diff(v) != 0.0))
    w = v[keep]
    d = np.sign(np.diff(w))
    if d.size < 2:
        return 0
    return int(np.sum((d[:-1] > 0) & (d[1:] < 0)))


# ---------------------------------------------------------------------------
# Brute-force pipeline recomputations over raw record tuples.
# tweets: (user_id, tweet_id, week); retweets: (tweet_id, follower_id, week);
# samples: (user_id, week, count); joins: {user_id: week}.
# ---------------------------------------------------------------------------


def _join_week(tweets, joins, user):
    weeks = [wk for u, _, wk in tweets if u == user]
    if user in joins:
        weeks.append(joins[user])
    return min(weeks)


def brute_weekly_means(tweets, retweets, joins, user):
    own = [(tid, wk) for u, tid, wk in tweets if u == user]
    if not own:
        raise LookupError(user)
    jw = _join_week(tweets, joins, user)
    n_retweets = {}
    for tid, _, _ in retweets:
        n_retweets[tid] = n_retweets.get(tid, 0) + 1
    buckets = {}
    for tid, wk in own:
        buckets.setdefault(wk - jw + 1, []).append(n_retweets.get(tid, 0))
    return {w: sum(v) / len(v) for w, v in buckets.items()}


def _brute_career_length(tweets, retweets, joins, user):
    own_ids = {tid for u, tid, _ in tweets if u == user}
    weeks = [wk for u, _, wk in tweets if u == user]
    weeks += [wk for tid, _, wk in retweets if tid in own_ids]
    return max(weeks) - _join_week(tweets, joins, user)


def _brute_histories(samples):
    by_user = {}
    for user, week, count in samples:
        by_user.setdefault(user, {})[week] = count  # last sample of a week wins
    return {u: sorted(d.items()) for u, d in by_user.items()}


def _brute_interp(points, week):
    if week <= points[0][0]:
        return float(points[0][1])
    if week >= points[-1][0]:
        return float(points[-1][1])
    for (w0, c0), (w1, c1) in zip(points, points[1:]):
        if w0 <= week <= w1:
            if week == w0:
                return float(c0)
            if week == w1:
                return float(c1)
            return c0 + (c1 - c0) * (week - w0) / (w1 - w0)
    raise AssertionError


def brute_career_curve(tweets, retweets, samples, joins, stratum, normalize):
    lo, hi = stratum
    histories = _brute_histories(samples)
    per_week = {}
    for user in dict.fromkeys(u for u, _, _ in tweets):
        if not lo <= _brute_career_length(tweets, retweets, joins, user) < hi:
            continue
        means = brute_weekly_means(tweets, retweets, joins, user)
        if normalize:
            if user not in histories:
                continue
            jw = _join_week(tweets, joins, user)
            for w, mean in means.items():
                followers = _brute_interp(histories[user], jw + w - 1)
                if followers <= 0.0:
                    continue
                per_week.setdefault(w, []).append(mean / followers)
        else:
            for w, mean in means.items():
                per_week.setdefault(w, []).append(mean)
    weeks = sorted(per_week)
    return (
        tuple(weeks),
        tuple(float(np.median(per_week[w])) for w in weeks),
        tuple(len(per_week[w]) for w in weeks),
    )


def brute_cohorts(tweets, retweets, joins, user):
    """Per-follower first-retweet grouping; returns [(t0, ages, values)]."""
    own_ids = {tid for u, tid, _ in tweets if u == user}
    if not own_ids:
        raise LookupError(user)
    jw = _join_week(tweets, joins, user)
    by_follower = {}
    for tid, fol, wk in retweets:
        if tid in own_ids:
            by_follower.setdefault(fol, []).append(wk - jw + 1)
    if not by_follower:
        return []
    end = max(
        [wk - jw + 1 for u, _, wk in tweets if u == user]
        + [w for ws in by_follower.values() for w in ws]
    )
    groups = {}
    for fol, weeks in by_follower.items():
        groups.setdefault(min(weeks), []).append(fol)
    out = []
    for t0 in sorted(groups):
        members = groups[t0]
        totals = {}
        for fol in members:
            for w in by_follower[fol]:
                totals[w] = totals.get(w, 0) + 1
        ages = tuple(range(1, end - t0 + 2))
        values = tuple(totals.get(t0 + a - 1, 0) / len(members) for a in ages)
        out.append((t0, ages, values))
    return out


def brute_aggregate(per_user_cohorts, t0):
    """Median across users of per-user cohort values at one start week."""
    rows = [c for cohorts in per_user_cohorts for c in cohorts if c[0] == t0]
    by_age = {}
    for _, ages, values in rows:
        for a, v in zip(ages, values):
            by_age.setdefault(a, []).append(v)
    ages = sorted(by_age)
    return (
        tuple(ages),
        tuple(float(np.median(by_age[a])) for a in ages),
        tuple(len(by_age[a]) for a in ages),
    )


def random_micro_log(rng):
    """A small random log (<= 10 users, <= 100 events) plus its raw records."""
    n_users = int(rng.integers(1, 6))
    tweets, retweets, samples = [], [], []
    joins = {}
    budget = 100
    for i in range(n_users):
        user = f"u{i}"
        join = int(rng.integers(1, 6))
        if rng.random() < 0.6:
            joins[user] = join
        n_tweets = int(rng.integers(1, 5))
        for j in range(n_tweets):
            week = join + int(rng.integers(0, 8))
            tweets.append((user, f"{user}.t{j}", week))
        budget -= n_tweets
        if rng.random() < 0.5:
            n_samples = int(rng.integers(1, 4))
            weeks = sorted(rng.choice(np.arange(join, join + 12), size=n_samples, replace=False))
            for w in weeks:
                samples.append((user, int(w), int(rng.integers(0, 40))))
            budget -= n_samples
    n_retweets = int(rng.integers(0, max(2, min(budget, 40))))
    for _ in range(n_retweets):
        user, tid, week = tweets[int(rng.integers(0, len(tweets)))]
        follower = f"f{int(rng.integers(0, 8))}"
        retweets.append((tid, follower, week + int(rng.integers(0, 6))))
    log = EventLog(list(tweets), list(retweets), list(samples), dict(joins))
    return log, tweets, retweets, samples, joins
