"""Plan types and exact acceptance probabilities for truncated life tests.

Three plan families share one binomial primitive.  With ``p`` the chance
that a single unit fails before the truncation time:

* single plan (n, c): accept when at most ``c`` of ``n`` units fail;
* double plan (n1, n2, c1, c2): accept on at most ``c1`` first-stage
  failures, reject on more than ``c2``; otherwise draw ``n2`` more units
  and accept when the combined failure count stays at or below ``c2``;
* group plan (g, r, c): accept when every one of ``g`` groups of ``r``
  units has at most ``c`` failures.

Evaluators are exact up to double precision: binomial point masses come
from the multiplicative term recursion (log-space fallback when the
leading term underflows) and outer sums use compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .distributions import QualitySetting, failure_prob
from .errors import DomainError

# below this log-scale the leading binomial term underflows double precision
_LOG_TINY = -700.0


def _check_prob(p: float) -> None:
    if not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0):
        raise DomainError(f"probability must lie in [0, 1], got {p!r}")


def _check_count(name: str, value: int, minimum: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class SinglePlan:
    """Sample size ``n`` and acceptance number ``c`` of a single-stage plan."""

    n: int
    c: int

    def __post_init__(self) -> None:
        _check_count("n", self.n, 1)
        _check_count("c", self.c, 0)
        if self.c > self.n:
            raise DomainError(f"acceptance number {self.c} exceeds sample size {self.n}")


@dataclass(frozen=True)
class DoublePlan:
    """Stage sizes ``n1 >= n2 >= 1`` and acceptance numbers ``c1 < c2 <= n1``."""

    n1: int
    n2: int
    c1: int
    c2: int

    def __post_init__(self) -> None:
        _check_count("n1", self.n1, 1)
        _check_count("n2", self.n2, 1)
        _check_count("c1", self.c1, 0)
        _check_count("c2", self.c2, 1)
        if self.c1 >= self.c2:
            raise DomainError(f"need c1 < c2, got c1={self.c1}, c2={self.c2}")
        if self.n2 > self.n1:
            raise DomainError(f"need n2 <= n1, got n1={self.n1}, n2={self.n2}")
        if self.c2 > self.n1:
            raise DomainError(f"need c2 <= n1, got n1={self.n1}, c2={self.c2}")


@dataclass(frozen=True)
class GroupPlan:
    """``g`` groups of ``r`` units each with per-group acceptance number ``c``."""

    g: int
    r: int
    c: int

    def __post_init__(self) -> None:
        _check_count("g", self.g, 1)
        _check_count("r", self.r, 1)
        _check_count("c", self.c, 0)
        if self.c > self.r:
            raise DomainError(f"acceptance number {self.c} exceeds group size {self.r}")

    @property
    def n(self) -> int:
        """Total sample size g * r."""
        return self.g * self.r


AnyPlan = Union[SinglePlan, DoublePlan, GroupPlan]


@dataclass(frozen=True)
class PlanEvaluation:
    """Acceptance probabilities at both risk points plus average sample number.

    ``p_accept_consumer`` is the acceptance probability at the consumer's
    quality point (the achieved consumer risk), ``p_accept_producer`` the
    one at the producer's point, and ``asn`` the expected number of units
    inspected at the consumer's point.
    """

    p_accept_consumer: float
    p_accept_producer: float
    asn: float

    def __post_init__(self) -> None:
        for name in ("p_accept_consumer", "p_accept_producer"):
            v = getattr(self, name)
            if not (-1e-12 <= v <= 1.0 + 1e-12):
                raise DomainError(f"{name} outside [0, 1]: {v!r}")
        if not self.asn > 0:
            raise DomainError(f"asn must be positive, got {self.asn!r}")


def _pmf_terms(n: int, kmax: int, p: float) -> list[float]:
    """Binomial(n, p) point masses for k = 0..min(kmax, n).

    Multiplicative recursion from the k = 0 term; switches to a log-space
    recursion when (1-p)**n underflows so that heavily skewed tails keep
    their leading digits.
    """
    kmax = min(kmax, n)
    if p == 0.0:
        return [1.0] + [0.0] * kmax
    if p == 1.0:
        out = [0.0] * (kmax + 1)
        if kmax == n:
            out[n] = 1.0
        return out
    q = 1.0 - p
    log_t0 = n * math.log(q)
    if log_t0 > _LOG_TINY:
        terms = [0.0] * (kmax + 1)
        t = q**n
        terms[0] = t
        ratio = p / q
        for k in range(kmax):
            t *= ratio * (n - k) / (k + 1.0)
            terms[k + 1] = t
        return terms
    log_ratio = math.log(p) - math.log(q)
    logs = [log_t0]
    lt = log_t0
    for k in range(kmax):
        lt += log_ratio + math.log((n - k) / (k + 1.0))
        logs.append(lt)
    return [math.exp(v) if v > -745.0 else 0.0 for v in logs]


def binom_cdf_tail(n: int, c: int, p: float) -> float:
    """Lower tail P(X <= c) for X ~ Binomial(n, p)."""
    _check_count("n", n, 1)
    _check_count("c", c, 0)
    if c > n:
        raise DomainError(f"c={c} exceeds n={n}")
    _check_prob(p)
    if c == n:
        return 1.0
    return min(1.0, math.fsum(_pmf_terms(n, c, p)))


def single_accept_prob(plan: SinglePlan, p: float) -> float:
    """Acceptance probability of a single plan: P(failures <= c)."""
    return binom_cdf_tail(plan.n, plan.c, p)


def double_accept_prob(plan: DoublePlan, p: float) -> float:
    """Acceptance probability of a double plan.

    First-stage acceptance mass plus, for every indecisive first-stage
    count j in (c1, c2], the chance the second stage adds at most c2 - j
    failures.  Nonincreasing in ``p``.
    """
    _check_prob(p)
    n1, n2, c1, c2 = plan.n1, plan.n2, plan.c1, plan.c2
    stage1 = _pmf_terms(n1, c2, p)
    inner_kmax = min(n2, c2 - c1 - 1)
    inner_terms = _pmf_terms(n2, inner_kmax, p)
    inner_cdf = [0.0] * (inner_kmax + 1)
    acc: list[float] = []
    for k in range(inner_kmax + 1):
        acc.append(inner_terms[k])
        inner_cdf[k] = min(1.0, math.fsum(acc))
    parts = stage1[: c1 + 1]
    for j in range(c1 + 1, c2 + 1):
        k = c2 - j
        inner = 1.0 if k >= n2 else inner_cdf[k]
        parts.append(stage1[j] * inner)
    return min(1.0, math.fsum(parts))


def first_decision_prob(plan: DoublePlan, p: float) -> float:
    """Chance the double plan decides on the first sample alone."""
    _check_prob(p)
    stage1 = _pmf_terms(plan.n1, plan.c2, p)
    middle = math.fsum(stage1[plan.c1 + 1 : plan.c2 + 1])
    return min(1.0, max(0.0, 1.0 - middle))


def double_asn(plan: DoublePlan, p: float) -> float:
    """Average sample number n1 + n2 * P(second sample needed)."""
    _check_prob(p)
    stage1 = _pmf_terms(plan.n1, plan.c2, p)
    middle = math.fsum(stage1[plan.c1 + 1 : plan.c2 + 1])
    return plan.n1 + plan.n2 * middle


def group_accept_prob(plan: GroupPlan, p: float) -> float:
    """Acceptance probability of a group plan: per-group tail to the g-th power."""
    base = binom_cdf_tail(plan.r, plan.c, p)
    return base**plan.g


def accept_prob(plan: AnyPlan, p: float) -> float:
    """Acceptance probability for any plan family."""
    if isinstance(plan, SinglePlan):
        return single_accept_prob(plan, p)
    if isinstance(plan, DoublePlan):
        return double_accept_prob(plan, p)
    if isinstance(plan, GroupPlan):
        return group_accept_prob(plan, p)
    raise DomainError(f"not a plan: {plan!r}")


def plan_asn(plan: AnyPlan, p: float) -> float:
    """Average sample number; fixed total size except for double plans."""
    if isinstance(plan, SinglePlan):
        _check_prob(p)
        return float(plan.n)
    if isinstance(plan, DoublePlan):
        return double_asn(plan, p)
    if isinstance(plan, GroupPlan):
        _check_prob(p)
        return float(plan.n)
    raise DomainError(f"not a plan: {plan!r}")


class OCPoint(NamedTuple):
    ratio: float
    p_accept: float
    asn: float


def oc_curve(
    plan: AnyPlan, gamma: float, a: float, ratios: list[float]
) -> list[OCPoint]:
    """Operating characteristic of a plan over a grid of quality ratios.

    Ratios must be positive and nondecreasing; duplicate points collapse
    to a single record.  Returns one (ratio, acceptance probability, asn)
    record per distinct ratio.
    """
    if not ratios:
        raise DomainError("ratio list must be non-empty")
    cleaned: list[float] = []
    for r in ratios:
        if not (isinstance(r, (int, float)) and math.isfinite(r) and r > 0):
            raise DomainError(f"ratios must be positive finite reals, got {r!r}")
        if cleaned and r < cleaned[-1]:
            raise DomainError("ratio list must be nondecreasing")
        if not cleaned or r > cleaned[-1]:
            cleaned.append(float(r))
    out = []
    for r in cleaned:
        p = failure_prob(QualitySetting(ratio=r, multiplier=a, gamma=gamma))
        out.append(OCPoint(r, accept_prob(plan, p), plan_asn(plan, p)))
    return out
