"""Inverse Weibull lifetime law and truncation failure probabilities.

The lifetime of a test unit follows the distribution with density

    f(t) = gamma * lam * t**-(gamma + 1) * exp(-lam * t**-gamma),  t > 0,

whose distribution function is ``exp(-lam * t**-gamma)``.  Plan design
never needs the scale parameter directly: once the test truncation time
is expressed as a multiple of the specified median life, the chance that
a unit fails before truncation depends only on the shape parameter, the
quality ratio and the duration multiplier.

All functions are pure and thread-safe.  Exponents are assembled in log
space so that extreme ratio/multiplier combinations underflow cleanly to
the correct 0/1 limits instead of overflowing intermediate powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_LOG_LOG2 = math.log(math.log(2.0))
# math.exp overflows past ~709.78; beyond that the value is a hard 0/1 limit.
_EXP_MAX = 709.0


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite real, got {value!r}")


@dataclass(frozen=True)
class LifetimeModel:
    """Shape/scale pair of the inverse Weibull law governing unit lifetimes.

    ``gamma`` controls the shape of the density, ``lam`` its dispersion
    (units of time**gamma).  Both must be strictly positive.
    """

    gamma: float
    lam: float

    def __post_init__(self) -> None:
        _require_positive("gamma", self.gamma)
        _require_positive("lam", self.lam)


@dataclass(frozen=True)
class QualitySetting:
    """Quality ratio, duration multiplier and shape defining one test point.

    ``ratio`` is true median life over specified median life, ``multiplier``
    the test duration as a fraction of the specified life.  The truncation
    time itself is implied and never stored.
    """

    ratio: float
    multiplier: float
    gamma: float

    def __post_init__(self) -> None:
        _require_positive("ratio", self.ratio)
        _require_positive("multiplier", self.multiplier)
        _require_positive("gamma", self.gamma)


def _check_time(t: float) -> None:
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0):
        raise DomainError(f"time must be a positive finite real, got {t!r}")


def _check_open_unit(name: str, p: float) -> None:
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {p!r}")


def iw_pdf(t: float, model: LifetimeModel) -> float:
    """Density gamma*lam*t**-(gamma+1)*exp(-lam*t**-gamma) at time ``t``."""
    _check_time(t)
    g, lam = model.gamma, model.lam
    log_t = math.log(t)
    log_rate = math.log(lam) - g * log_t
    rate = math.exp(log_rate) if log_rate <= _EXP_MAX else math.inf
    log_pdf = math.log(g) + math.log(lam) - (g + 1.0) * log_t - rate
    if log_pdf > _EXP_MAX:
        return math.inf
    return math.exp(log_pdf)


def iw_cdf(t: float, model: LifetimeModel) -> float:
    """Probability that a unit's lifetime does not exceed ``t``."""
    _check_time(t)
    log_rate = math.log(model.lam) - model.gamma * math.log(t)
    if log_rate > _EXP_MAX:
        return 0.0
    return math.exp(-math.exp(log_rate))


def iw_quantile(p: float, model: LifetimeModel) -> float:
    """Time below which a lifetime falls with probability ``p``.

    Inverts the distribution function: ``(-lam / log p) ** (1 / gamma)``.
    """
    _check_open_unit("p", p)
    log_t = (math.log(model.lam) - math.log(-math.log(p))) / model.gamma
    return math.exp(log_t)


def iw_median(model: LifetimeModel) -> float:
    """Median lifetime ``(lam / log 2) ** (1 / gamma)``."""
    return math.exp((math.log(model.lam) - _LOG_LOG2) / model.gamma)


def failure_prob(setting: QualitySetting) -> float:
    """Chance a unit fails before truncation at the given quality setting.

    Equals ``exp(-(ratio**gamma) * log(2) * multiplier**-gamma)``.  Strictly
    decreasing in the ratio, strictly increasing in the multiplier, and
    independent of the scale parameter.
    """
    log_expo = setting.gamma * (math.log(setting.ratio) - math.log(setting.multiplier))
    log_expo += _LOG_LOG2
    if log_expo > _EXP_MAX:
        return 0.0
    return math.exp(-math.exp(log_expo))


def failure_prob_percentile(
    theta_ratio: float, a_tilde: float, gamma: float, p: float
) -> float:
    """Failure probability when quality is measured at the 100p-th percentile.

    ``theta_ratio`` is true-over-specified percentile life and ``a_tilde``
    the duration multiplier applied to the specified percentile life.
    Returns ``exp(-(theta_ratio**gamma) * (-log p) * a_tilde**-gamma)``;
    at ``p = 0.5`` this reduces to :func:`failure_prob`.
    """
    _require_positive("theta_ratio", theta_ratio)
    _require_positive("a_tilde", a_tilde)
    _require_positive("gamma", gamma)
    _check_open_unit("p", p)
    log_expo = gamma * (math.log(theta_ratio) - math.log(a_tilde))
    log_expo += math.log(-math.log(p))
    if log_expo > _EXP_MAX:
        return 0.0
    return math.exp(-math.exp(log_expo))
