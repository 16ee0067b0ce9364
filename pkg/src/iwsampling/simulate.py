"""Monte Carlo execution of the truncated life-test decision procedures.

Each replicate simulates one lot decision: unit lifetimes are drawn by
inverting the lifetime distribution function, failures are the units
whose lifetime falls at or below the censoring time, and the plan's
decision rule is applied literally.  This gives a stochastic oracle for
every analytic acceptance probability and average sample number that
shares no code path with the binomial evaluators.

Randomness is a pure function of (seed, replicate index, unit index):
the per-draw counter feeds the SplitMix64 output function, so results
are bit-identical regardless of chunking or execution schedule, and
second-stage draws can be generated lazily only for the replicates that
need them without changing any value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import LifetimeModel, iw_median  # noqa: F401  (median used by callers)
from .errors import DomainError
from .plans import DoublePlan, GroupPlan, SinglePlan

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_CHUNK_ELEMS = 1 << 22  # unit draws per chunk; value-invariant, memory only


@dataclass(frozen=True)
class SimConfig:
    """Lifetime model, censoring time, replicate count and seed of one run."""

    model: LifetimeModel
    t0: float
    reps: int
    seed: int

    def __post_init__(self) -> None:
        if not (isinstance(self.t0, (int, float)) and math.isfinite(self.t0) and self.t0 > 0):
            raise DomainError(f"t0 must be positive, got {self.t0!r}")
        if not isinstance(self.reps, int) or isinstance(self.reps, bool) or self.reps < 1:
            raise DomainError(f"reps must be an integer >= 1, got {self.reps!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not (
            0 <= self.seed < 2**64
        ):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


@dataclass(frozen=True)
class SimReport:
    """Aggregated decisions of one simulation run.

    ``mean_sample_number`` is the empirical average of inspected units
    (varies only for double plans).  ``decisions`` counts accept, reject
    and second-sample events.  ``total_units``/``total_failures`` track
    every simulated unit for calibration checks.
    """

    accept_rate: float
    accept_rate_stderr: float
    mean_sample_number: float
    decisions: dict[str, int]
    total_units: int
    total_failures: int


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _uniforms(seed: int, counters: np.ndarray) -> np.ndarray:
    """Open-interval (0, 1) uniforms at the given 64-bit counters."""
    z = np.uint64(seed) + (counters + np.uint64(1)) * _GOLDEN
    bits = _mix(z)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample_lifetime(model: LifetimeModel, u):
    """Lifetime whose distribution function equals ``u``: (-lam / log u)**(1/gamma).

    Accepts a scalar or an array of probabilities in the open unit interval.
    """
    arr = np.asarray(u, dtype=np.float64)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("u must lie strictly inside (0, 1)")
    out = np.exp((math.log(model.lam) - np.log(-np.log(arr))) / model.gamma)
    if np.isscalar(u) or arr.ndim == 0:
        return float(out)
    return out


def _failure_counts(
    config: SimConfig, rep_ids: np.ndarray, unit_offset: int, n_units: int, stride: int
) -> tuple[np.ndarray, int]:
    """Failures before t0 among ``n_units`` fresh units of each replicate."""
    counters = (
        rep_ids[:, None].astype(np.uint64) * np.uint64(stride)
        + np.arange(unit_offset, unit_offset + n_units, dtype=np.uint64)[None, :]
    )
    u = _uniforms(config.seed, counters)
    failed = sample_lifetime(config.model, u) <= config.t0
    return failed.sum(axis=1), int(failed.sum())


def _chunks(reps: int, units_per_rep: int):
    size = max(1, _CHUNK_ELEMS // max(1, units_per_rep))
    start = 0
    while start < reps:
        stop = min(reps, start + size)
        yield np.arange(start, stop, dtype=np.uint64)
        start = stop


def simulate_single(plan: SinglePlan, config: SimConfig) -> SimReport:
    """Run the single-plan test: accept when at most c of n units fail."""
    accepts = 0
    failures = 0
    for rep_ids in _chunks(config.reps, plan.n):
        fails, total = _failure_counts(config, rep_ids, 0, plan.n, plan.n)
        accepts += int((fails <= plan.c).sum())
        failures += total
    reps = config.reps
    rate = accepts / reps
    return SimReport(
        accept_rate=rate,
        accept_rate_stderr=math.sqrt(rate * (1.0 - rate) / reps),
        mean_sample_number=float(plan.n),
        decisions={"accept": accepts, "reject": reps - accepts, "second_sample": 0},
        total_units=reps * plan.n,
        total_failures=failures,
    )


def simulate_double(plan: DoublePlan, config: SimConfig) -> SimReport:
    """Run the two-stage test, drawing the second sample only when needed."""
    n1, n2, c1, c2 = plan.n1, plan.n2, plan.c1, plan.c2
    stride = n1 + n2
    accepts = 0
    second = 0
    failures = 0
    units = 0
    for rep_ids in _chunks(config.reps, stride):
        fails1, total1 = _failure_counts(config, rep_ids, 0, n1, stride)
        failures += total1
        units += n1 * len(rep_ids)
        accepts += int((fails1 <= c1).sum())
        undecided = (fails1 > c1) & (fails1 <= c2)
        if undecided.any():
            second_ids = rep_ids[undecided]
            fails2, total2 = _failure_counts(config, second_ids, n1, n2, stride)
            failures += total2
            units += n2 * len(second_ids)
            second += len(second_ids)
            accepts += int((fails1[undecided] + fails2 <= c2).sum())
    reps = config.reps
    rate = accepts / reps
    return SimReport(
        accept_rate=rate,
        accept_rate_stderr=math.sqrt(rate * (1.0 - rate) / reps),
        mean_sample_number=units / reps,
        decisions={"accept": accepts, "reject": reps - accepts, "second_sample": second},
        total_units=units,
        total_failures=failures,
    )


def simulate_group(plan: GroupPlan, config: SimConfig) -> SimReport:
    """Run the group test: accept when every group has at most c failures."""
    g, r = plan.g, plan.r
    stride = g * r
    accepts = 0
    failures = 0
    for rep_ids in _chunks(config.reps, stride):
        counters = (
            rep_ids[:, None].astype(np.uint64) * np.uint64(stride)
            + np.arange(stride, dtype=np.uint64)[None, :]
        )
        u = _uniforms(config.seed, counters)
        failed = sample_lifetime(config.model, u) <= config.t0
        failures += int(failed.sum())
        per_group = failed.reshape(len(rep_ids), g, r).sum(axis=2)
        accepts += int((per_group <= plan.c).all(axis=1).sum())
    reps = config.reps
    rate = accepts / reps
    return SimReport(
        accept_rate=rate,
        accept_rate_stderr=math.sqrt(rate * (1.0 - rate) / reps),
        mean_sample_number=float(stride),
        decisions={"accept": accepts, "reject": reps - accepts, "second_sample": 0},
        total_units=reps * stride,
        total_failures=failures,
    )
