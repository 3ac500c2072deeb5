"""Closed-form model of follower interest decay over a user's career.

Each follower retweets at a rate that decays as a power law in the time
since they started following:

    f(t) = c * t**(-alpha)

With followers arriving at unit rate on top of ``s`` initial ones, the
user's retweet rate at career time ``t`` is the cumulative

    F(t) = integral from 0 to t of f(tau + epsilon) dtau

where the offset ``epsilon > 0`` keeps the integral finite for
``alpha >= 1``, and the per-follower rate is

    G(t) = F(t) / (s + t)

For ``s = 0`` the per-follower rate only decreases; for ``s > 0`` it rises
to a single interior maximum (the "peak age") and decreases afterwards.
:func:`peak_age` locates that maximum by bracketed bisection on
:func:`extremum_gap`, whose only sign change on ``[0, inf)`` is at the
peak.  A discrete-time variant sums ``f`` over integer ages starting at 1.

All functions are pure; time arguments accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ALPHA_ONE_TOL",
    "ModelParams",
    "PeakAge",
    "follower_rate",
    "cumulative_rate",
    "per_follower_rate",
    "extremum_gap",
    "peak_age",
    "rate_bound",
    "discrete_cumulative",
    "discrete_per_follower",
]

# Width of the band around alpha = 1 inside which the logarithmic form of
# the cumulative rate replaces the general closed form.
ALPHA_ONE_TOL = 1e-9

# Bracket expansion for the peak-age solver gives up once the upper
# bracket exceeds 2**64 * epsilon.
_MAX_DOUBLINGS = 64

_PARAM_BOUNDS = {
    "c": "c must be a positive finite real",
    "alpha": "alpha must be a positive finite real",
    "epsilon": "epsilon must be a positive finite real",
    "s": "s must be a non-negative finite real",
}


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the follower-interest model.

    c: retweet rate of a follower of age 1 (> 0)
    alpha: power-law decay exponent (> 0)
    epsilon: age offset used by the continuous forms (> 0)
    s: follower count at career start (>= 0)
    """

    c: float
    alpha: float
    epsilon: float = 1.0
    s: float = 0.0

    def __post_init__(self):
        for name, message in _PARAM_BOUNDS.items():
            raw = getattr(self, name)
            try:
                value = float(raw)
            except (TypeError, ValueError):
                raise ValueError(f"{message}, got {raw!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{message}, got {raw!r}")
            if value < 0.0 or (value == 0.0 and name != "s"):
                raise ValueError(f"{message}, got {raw!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class PeakAge:
    """Location and height of the per-follower rate maximum."""

    t_star: float
    g_at_peak: float
    converged: bool


def _validate_time(t, *, positive: bool, name: str = "t") -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if positive:
        if arr.size and np.any(arr <= 0.0):
            raise ValueError(f"{name} must be > 0")
    elif arr.size and np.any(arr < 0.0):
        raise ValueError(f"{name} must be >= 0")
    return arr


def _maybe_scalar(out: np.ndarray, t) -> float | np.ndarray:
    if np.ndim(t) == 0:
        return float(out)
    return out


def follower_rate(params: ModelParams, t):
    """Retweet rate ``c * t**(-alpha)`` of a follower of age ``t > 0``."""
    arr = _validate_time(t, positive=True)
    out = params.c * np.power(arr, -params.alpha)
    return _maybe_scalar(out, t)


def cumulative_rate(params: ModelParams, t):
    """Cumulative retweet rate ``F(t)`` for career time ``t >= 0``.

    Outside the ``ALPHA_ONE_TOL`` band around alpha = 1 this is
    ``c/(alpha-1) * (epsilon**(1-alpha) - (t+epsilon)**(1-alpha))``,
    evaluated through ``expm1`` so that values stay accurate arbitrarily
    close to alpha = 1; inside the band it is the alpha = 1 limit
    ``c * log(1 + t/epsilon)``.
    """
    arr = _validate_time(t, positive=False)
    eps = params.epsilon
    beta = params.alpha - 1.0
    if abs(beta) < ALPHA_ONE_TOL:
        out = params.c * np.log1p(arr / eps)
    else:
        # (c/beta) * (eps**-beta - (t+eps)**-beta), rewritten to avoid
        # cancellation between the two powers.
        out = -(params.c / beta) * eps**-beta * np.expm1(-beta * np.log1p(arr / eps))
    return _maybe_scalar(out, t)


def per_follower_rate(params: ModelParams, t):
    """Per-follower rate ``G(t) = F(t) / (s + t)``.

    Undefined (0/0) at ``t = 0`` when ``s = 0``.
    """
    arr = _validate_time(t, positive=False)
    if params.s == 0.0 and arr.size and np.any(arr == 0.0):
        raise ValueError("per-follower rate is undefined at t = 0 when s = 0")
    out = cumulative_rate(params, arr) / (params.s + arr)
    return _maybe_scalar(out, t)


def extremum_gap(params: ModelParams, t):
    """Stationarity residual of ``G`` whose unique root on [0, inf) is the peak age.

    Setting ``G'(t) = 0`` and clearing denominators gives, for alpha != 1,

        epsilon**(1-alpha) * (t+epsilon)**alpha - (alpha-1)*s - epsilon - alpha*t

    which is negative before the peak and positive after it when alpha > 1,
    and the reverse when alpha < 1.  In the alpha = 1 band the same
    derivation with the logarithmic ``F`` yields

        (t+epsilon) * log(1 + t/epsilon) - (s + t)

    negative before the peak and positive after.  ``c`` cancels in both.
    """
    arr = _validate_time(t, positive=False)
    eps = params.epsilon
    alpha = params.alpha
    s = params.s
    if abs(alpha - 1.0) < ALPHA_ONE_TOL:
        out = (arr + eps) * np.log1p(arr / eps) - (s + arr)
    else:
        out = (
            eps ** (1.0 - alpha) * np.power(arr + eps, alpha)
            - (alpha - 1.0) * s
            - eps
            - alpha * arr
        )
        # At t = 0 the two epsilon terms cancel exactly.
        out = np.where(arr == 0.0, -(alpha - 1.0) * s, out)
    return _maybe_scalar(out, t)


def peak_age(params: ModelParams, rel_tol: float = 1e-9) -> PeakAge:
    """Locate the unique maximum of the per-follower rate ``G``.

    For ``s = 0`` the maximum sits at the boundary ``t = 0`` and the
    reported height is the right-hand limit, evaluated at ``t = rel_tol``.
    For ``s > 0`` the peak is interior and found by bisection on
    :func:`extremum_gap`: the upper bracket is grown by doubling from
    ``epsilon`` until the sign flips, then the interval is halved until
    ``hi - lo <= rel_tol * max(1, t_star)``.  ``converged`` is False only
    when bracket expansion hits the doubling cap.
    """
    rel_tol = float(rel_tol)
    if not math.isfinite(rel_tol) or rel_tol <= 0.0:
        raise ValueError(f"rel_tol must be a positive finite real, got {rel_tol!r}")

    if params.s == 0.0:
        return PeakAge(0.0, per_follower_rate(params, rel_tol), True)

    gap_zero = extremum_gap(params, 0.0)
    before_sign = gap_zero > 0.0  # s > 0 makes gap(0) nonzero

    lo = 0.0
    hi = params.epsilon
    for _ in range(_MAX_DOUBLINGS + 1):
        gap_hi = extremum_gap(params, hi)
        if gap_hi == 0.0:
            return PeakAge(hi, per_follower_rate(params, hi), True)
        if (gap_hi > 0.0) != before_sign:
            break
        lo = hi
        hi *= 2.0
    else:
        return PeakAge(hi, per_follower_rate(params, hi), False)

    while hi - lo > rel_tol * max(1.0, 0.5 * (lo + hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # float resolution exhausted
        gap_mid = extremum_gap(params, mid)
        if gap_mid == 0.0:
            lo = hi = mid
            break
        if (gap_mid > 0.0) == before_sign:
            lo = mid
        else:
            hi = mid

    t_star = 0.5 * (lo + hi)
    return PeakAge(t_star, per_follower_rate(params, t_star), True)


def rate_bound(params: ModelParams) -> float | None:
    """Supremum of ``F`` when alpha > 1, else None.

    For alpha > 1 the cumulative rate saturates below
    ``c * epsilon**(1-alpha) / (alpha-1)``; for alpha <= 1 it grows
    without bound.
    """
    if params.alpha <= 1.0:
        return None
    return params.c * params.epsilon ** (1.0 - params.alpha) / (params.alpha - 1.0)


def _validate_step_index(t) -> int:
    try:
        value = float(t)
    except (TypeError, ValueError):
        raise ValueError(f"t must be a positive integer, got {t!r}") from None
    if not value.is_integer() or isinstance(t, bool):
        raise ValueError(f"t must be a positive integer, got {t!r}")
    k = int(value)
    if k < 1:
        raise ValueError(f"t must be >= 1, got {t!r}")
    return k


def discrete_cumulative(params: ModelParams, t) -> float:
    """Exact partial sum ``sum_{tau=1}^{t} c * tau**(-alpha)`` for integer t >= 1.

    The discrete construction uses no epsilon offset; follower age starts
    at 1.
    """
    k = _validate_step_index(t)
    return math.fsum(params.c * tau**-params.alpha for tau in range(1, k + 1))


def discrete_per_follower(params: ModelParams, t) -> float:
    """Discrete per-follower rate ``F(t) / (s + t)`` for integer t >= 1."""
    k = _validate_step_index(t)
    return discrete_cumulative(params, k) / (params.s + k)
