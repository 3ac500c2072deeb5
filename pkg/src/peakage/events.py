"""Event-log container and its line-delimited JSON interchange format.

A log is a set of timestamped records for a group of users, one JSON
object per line (UTF-8), with a ``kind`` field selecting the record type:

    {"kind": "tweet", "user_id": ..., "tweet_id": ..., "week": int}
    {"kind": "retweet", "tweet_id": ..., "follower_id": ..., "week": int}
    {"kind": "follower_sample", "user_id": ..., "week": int, "count": int}
    {"kind": "join", "user_id": ..., "week": int}

Weeks are non-negative integers on a shared timeline.  Unknown fields are
ignored.  Structurally invalid lines, unknown kinds, retweets of unknown
tweets, and retweets dated before their tweet are reported with their line
number and count against the reader's bad-line budget.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

__all__ = [
    "Tweet",
    "Retweet",
    "FollowerSample",
    "EventLog",
    "MalformedLineWarning",
    "MalformedLogError",
    "read_event_log",
    "write_event_log",
]

KINDS = ("tweet", "retweet", "follower_sample", "join")


class Tweet(NamedTuple):
    user_id: object
    tweet_id: object
    week: int


class Retweet(NamedTuple):
    tweet_id: object
    follower_id: object
    week: int


class FollowerSample(NamedTuple):
    user_id: object
    week: int
    count: int


class MalformedLineWarning(UserWarning):
    """A log line was skipped while reading."""


class MalformedLogError(ValueError):
    """Raised when a log exceeds the reader's bad-line budget."""

    def __init__(self, issues):
        self.issues = list(issues)
        lines = ", ".join(f"line {n}: {reason}" for n, reason in self.issues)
        super().__init__(f"{len(self.issues)} malformed record(s): {lines}")


def _check_week(week, what) -> int:
    if isinstance(week, bool) or not isinstance(week, int):
        raise ValueError(f"{what} week must be an integer, got {week!r}")
    if week < 0:
        raise ValueError(f"{what} week must be >= 0, got {week!r}")
    return week


@dataclass
class EventLog:
    """Tweets, retweets, and follower-count samples for a set of users.

    ``join_week`` maps each user to the week of their first activity.
    Every retweet must reference a tweet in the log and may not predate
    it.  Follower samples are not required to be monotone; observed logs
    may legitimately record declining counts.
    """

    tweets: list[Tweet] = field(default_factory=list)
    retweets: list[Retweet] = field(default_factory=list)
    follower_samples: list[FollowerSample] = field(default_factory=list)
    join_week: dict = field(default_factory=dict)

    def __post_init__(self):
        self.tweets = [Tweet(*t) for t in self.tweets]
        self.retweets = [Retweet(*r) for r in self.retweets]
        self.follower_samples = [FollowerSample(*s) for s in self.follower_samples]
        tweet_weeks = {}
        for t in self.tweets:
            _check_week(t.week, "tweet")
            if t.tweet_id in tweet_weeks:
                raise ValueError(f"duplicate tweet_id {t.tweet_id!r}")
            tweet_weeks[t.tweet_id] = t.week
        for r in self.retweets:
            _check_week(r.week, "retweet")
            posted = tweet_weeks.get(r.tweet_id)
            if posted is None:
                raise ValueError(f"retweet references unknown tweet {r.tweet_id!r}")
            if r.week < posted:
                raise ValueError(
                    f"retweet of {r.tweet_id!r} in week {r.week} predates tweet week {posted}"
                )
        for s in self.follower_samples:
            _check_week(s.week, "follower_sample")
            if isinstance(s.count, bool) or not isinstance(s.count, int) or s.count < 0:
                raise ValueError(f"follower count must be a non-negative integer, got {s.count!r}")
        for user, week in self.join_week.items():
            _check_week(week, f"join[{user!r}]")


_REQUIRED = {
    "tweet": ("user_id", "tweet_id", "week"),
    "retweet": ("tweet_id", "follower_id", "week"),
    "follower_sample": ("user_id", "week", "count"),
    "join": ("user_id", "week"),
}


def read_event_log(source, max_bad_lines: int = 0) -> EventLog:
    """Parse a line-delimited log from a path or an open text file.

    Bad lines are reported as :class:`MalformedLineWarning`; once more
    than ``max_bad_lines`` have accumulated a :class:`MalformedLogError`
    is raised.  Blank lines are skipped silently.  Duplicate join records
    keep the earliest week.
    """
    if hasattr(source, "read"):
        return _read_lines(source, max_bad_lines)
    with open(source, "r", encoding="utf-8") as handle:
        return _read_lines(handle, max_bad_lines)


def _read_lines(handle, max_bad_lines: int) -> EventLog:
    issues: list[tuple[int, str]] = []

    def bad(lineno, reason):
        issues.append((lineno, reason))
        warnings.warn(f"line {lineno}: {reason}", MalformedLineWarning, stacklevel=3)
        if len(issues) > max_bad_lines:
            raise MalformedLogError(issues)

    tweets: list[Tweet] = []
    pending_retweets: list[tuple[int, Retweet]] = []
    samples: list[FollowerSample] = []
    joins: dict = {}
    tweet_weeks: dict = {}

    for lineno, line in enumerate(handle, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            bad(lineno, f"invalid JSON ({exc.msg})")
            continue
        if not isinstance(obj, dict):
            bad(lineno, "record is not an object")
            continue
        kind = obj.get("kind")
        if kind not in _REQUIRED:
            bad(lineno, f"unknown kind {kind!r}")
            continue
        missing = [k for k in _REQUIRED[kind] if k not in obj]
        if missing:
            bad(lineno, f"{kind} record missing field(s) {', '.join(missing)}")
            continue
        week = obj["week"]
        if isinstance(week, bool) or not isinstance(week, int) or week < 0:
            bad(lineno, f"week must be a non-negative integer, got {week!r}")
            continue
        if kind == "tweet":
            if obj["tweet_id"] in tweet_weeks:
                bad(lineno, f"duplicate tweet_id {obj['tweet_id']!r}")
                continue
            tweet_weeks[obj["tweet_id"]] = week
            tweets.append(Tweet(obj["user_id"], obj["tweet_id"], week))
        elif kind == "retweet":
            pending_retweets.append((lineno, Retweet(obj["tweet_id"], obj["follower_id"], week)))
        elif kind == "follower_sample":
            count = obj["count"]
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                bad(lineno, f"count must be a non-negative integer, got {count!r}")
                continue
            samples.append(FollowerSample(obj["user_id"], week, count))
        else:  # join
            user = obj["user_id"]
            joins[user] = min(joins[user], week) if user in joins else week

    retweets: list[Retweet] = []
    for lineno, rt in pending_retweets:
        posted = tweet_weeks.get(rt.tweet_id)
        if posted is None:
            bad(lineno, f"retweet references unknown tweet {rt.tweet_id!r}")
            continue
        if rt.week < posted:
            bad(lineno, f"retweet week {rt.week} predates tweet week {posted}")
            continue
        retweets.append(rt)

    return EventLog(tweets, retweets, samples, joins)


def write_event_log(log: EventLog, target) -> None:
    """Write a log in the canonical line-delimited format.

    Output is deterministic for a given log: join records first (in map
    order), then tweets, retweets, and follower samples in list order,
    each dumped with sorted keys.
    """
    if hasattr(target, "write"):
        _write_lines(log, target)
        return
    with open(target, "w", encoding="utf-8", newline="\n") as handle:
        _write_lines(log, handle)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _write_lines(log: EventLog, handle) -> None:
    for user, week in log.join_week.items():
        handle.write(_dump({"kind": "join", "user_id": user, "week": week}) + "\n")
    for t in log.tweets:
        handle.write(
            _dump({"kind": "tweet", "user_id": t.user_id, "tweet_id": t.tweet_id, "week": t.week})
            + "\n"
        )
    for r in log.retweets:
        handle.write(
            _dump(
                {
                    "kind": "retweet",
                    "tweet_id": r.tweet_id,
                    "follower_id": r.follower_id,
                    "week": r.week,
                }
            )
            + "\n"
        )
    for s in log.follower_samples:
        handle.write(
            _dump(
                {
                    "kind": "follower_sample",
                    "user_id": s.user_id,
                    "week": s.week,
                    "count": s.count,
                }
            )
            + "\n"
        )
