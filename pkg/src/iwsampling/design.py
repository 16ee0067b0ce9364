"""Constrained integer search for minimum-cost sampling plans.

Every design problem asks for the cheapest plan whose acceptance
probability is at most ``beta`` at the consumer's quality ratio and at
least ``1 - alpha`` at the producer's.  Cost is the average sample
number at the consumer's point for double plans and the fixed total
sample size otherwise.

The double-plan search exploits monotonicity of the acceptance
probability in n1, n2 and the acceptance numbers.  For each (c1, c2)
pair it derives necessary bounds on n1 from single-stage tails, then
evaluates the whole admissible (n1, n2) rectangle with vectorised
binomial tables.  Table arithmetic only shortlists candidates; every
candidate is re-verified with the exact evaluators in
:mod:`iwsampling.plans` before it can become the incumbent, so returned
plans satisfy the risk constraints under strict comparison with no
epsilon slack.  Ties on the objective break towards smaller n1 + n2,
then smaller n1, then smaller c2, then smaller c1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import QualitySetting, failure_prob
from .errors import DomainError
from .plans import (
    AnyPlan,
    DoublePlan,
    GroupPlan,
    PlanEvaluation,
    SinglePlan,
    binom_cdf_tail,
    double_accept_prob,
    double_asn,
    group_accept_prob,
    single_accept_prob,
)

# admits borderline candidates into the exact re-check; never relaxes the
# exact feasibility comparison itself
_SLACK = 1e-12


@dataclass(frozen=True)
class RiskSpec:
    """Risk levels, quality ratios, duration multiplier and shape of a design problem."""

    beta: float
    alpha: float
    r2: float
    a: float
    gamma: float
    r1: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not 0.0 < self.beta < 1.0:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not (self.r1 > 0 and math.isfinite(self.r1)):
            raise DomainError(f"r1 must be positive, got {self.r1!r}")
        if not (self.r2 > self.r1 and math.isfinite(self.r2)):
            raise DomainError(f"need r2 > r1, got r1={self.r1!r}, r2={self.r2!r}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"a must be positive, got {self.a!r}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive, got {self.gamma!r}")

    @property
    def p_consumer(self) -> float:
        """Failure probability before truncation at the consumer's ratio."""
        return failure_prob(QualitySetting(self.r1, self.a, self.gamma))

    @property
    def p_producer(self) -> float:
        """Failure probability before truncation at the producer's ratio."""
        return failure_prob(QualitySetting(self.r2, self.a, self.gamma))


@dataclass(frozen=True)
class SearchBounds:
    """Caps on the integer search lattice."""

    n_max: int = 1000
    c_max: int = 60
    g_max: int = 5000

    def __post_init__(self) -> None:
        for name in ("n_max", "c_max", "g_max"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise DomainError(f"{name} must be an integer >= 1, got {v!r}")


@dataclass(frozen=True)
class DesignOutcome:
    """Search result: a plan with its evaluation, or an infeasibility marker."""

    feasible: bool
    plan: Optional[AnyPlan] = None
    evaluation: Optional[PlanEvaluation] = None


_INFEASIBLE = DesignOutcome(feasible=False)


def _binom_tables(p: float, n_max: int, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Point-mass and lower-tail tables of Binomial(n, p) for n <= n_max, k <= kmax."""
    pmf = np.zeros((n_max + 1, kmax + 1))
    pmf[0, 0] = 1.0
    q = 1.0 - p
    for n in range(1, n_max + 1):
        prev = pmf[n - 1]
        pmf[n] = q * prev
        pmf[n, 1:] += p * prev[:-1]
    cdf = np.minimum(np.cumsum(pmf, axis=1), 1.0)
    return pmf, cdf


def design_single(spec: RiskSpec, bounds: SearchBounds = SearchBounds()) -> DesignOutcome:
    """Smallest single plan meeting both risk constraints; ties prefer smaller c."""
    p1, p2 = spec.p_consumer, spec.p_producer
    kmax = min(bounds.c_max, bounds.n_max)
    _, cdf1 = _binom_tables(p1, bounds.n_max, kmax)
    _, cdf2 = _binom_tables(p2, bounds.n_max, kmax)
    lo_beta = spec.beta + _SLACK
    hi_accept = (1.0 - spec.alpha) - _SLACK
    for n in range(1, bounds.n_max + 1):
        cm = min(bounds.c_max, n)
        ok = (cdf1[n, : cm + 1] <= lo_beta) & (cdf2[n, : cm + 1] >= hi_accept)
        for c in np.nonzero(ok)[0]:
            plan = SinglePlan(n, int(c))
            pa1 = single_accept_prob(plan, p1)
            if not pa1 <= spec.beta:
                continue
            pa2 = single_accept_prob(plan, p2)
            if not pa2 >= 1.0 - spec.alpha:
                continue
            return DesignOutcome(True, plan, PlanEvaluation(pa1, pa2, float(n)))
    return _INFEASIBLE


def design_group(
    spec: RiskSpec, r: int, bounds: SearchBounds = SearchBounds()
) -> DesignOutcome:
    """Fewest groups of size ``r`` meeting both constraints; ties prefer smaller c."""
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise DomainError(f"r must be an integer >= 1, got {r!r}")
    p1, p2 = spec.p_consumer, spec.p_producer
    cs = range(0, min(r, bounds.c_max) + 1)
    base1 = [binom_cdf_tail(r, c, p1) for c in cs]
    base2 = [binom_cdf_tail(r, c, p2) for c in cs]
    for g in range(1, bounds.g_max + 1):
        for c in cs:
            if base1[c] ** g <= spec.beta and base2[c] ** g >= 1.0 - spec.alpha:
                plan = GroupPlan(g, r, c)
                ev = PlanEvaluation(
                    group_accept_prob(plan, p1),
                    group_accept_prob(plan, p2),
                    float(plan.n),
                )
                return DesignOutcome(True, plan, ev)
    return _INFEASIBLE


def design_double(spec: RiskSpec, bounds: SearchBounds = SearchBounds()) -> DesignOutcome:
    """Minimum-ASN double plan over c1 < c2 <= c_max, c2 < n1 <= n_max, n2 <= n1."""
    p1, p2 = spec.p_consumer, spec.p_producer
    n_max, c_max = bounds.n_max, bounds.c_max
    pmf1, cdf1 = _binom_tables(p1, n_max, c_max)
    pmf2, cdf2 = _binom_tables(p2, n_max, c_max)
    beta_cut = spec.beta + _SLACK
    accept_cut = (1.0 - spec.alpha) - _SLACK

    best_key: Optional[tuple] = None
    best: Optional[DesignOutcome] = None

    for c2 in range(1, c_max + 1):
        if c2 + 1 > n_max:
            break
        if best_key is not None and c2 + 1 > best_key[0]:
            break
        # producer constraint is at most the first-stage tail at c2, so any
        # workable n1 satisfies cdf2[n1, c2] >= 1 - alpha; the column is
        # decreasing in n1, making the admissible n1 a prefix
        prod_ok = cdf2[c2 + 1 : n_max + 1, c2] >= accept_cut
        if not prod_ok.any():
            continue
        n1_hi_pair = c2 + 1 + int(np.nonzero(prod_ok)[0].max())
        for c1 in range(0, c2):
            # consumer constraint is at least the first-stage tail at c1
            cons_ok = cdf1[c2 + 1 : n_max + 1, c1] <= beta_cut
            if not cons_ok.any():
                break  # raising c1 only raises the tail; no larger c1 works
            n1_lo = c2 + 1 + int(np.nonzero(cons_ok)[0].min())
            n1_hi = n1_hi_pair
            if best_key is not None:
                n1_hi = min(n1_hi, int(math.floor(best_key[0] + 1e-12)))
            if n1_lo > n1_hi:
                break  # n1_lo grows with c1 while n1_hi does not
            n1s = np.arange(n1_lo, n1_hi + 1)
            n2s = np.arange(1, n1_hi + 1)
            cols = np.arange(c2 - c1 - 1, -1, -1)
            stage1_p1 = pmf1[n1s, c1 + 1 : c2 + 1]
            stage1_p2 = pmf2[n1s, c1 + 1 : c2 + 1]
            inner_p1 = cdf1[1 : n1_hi + 1][:, cols]
            inner_p2 = cdf2[1 : n1_hi + 1][:, cols]
            pa1 = cdf1[n1s, c1][:, None] + stage1_p1 @ inner_p1.T
            pa2 = cdf2[n1s, c1][:, None] + stage1_p2 @ inner_p2.T
            feasible = (pa1 <= beta_cut) & (pa2 >= accept_cut)
            feasible &= n2s[None, :] <= n1s[:, None]
            if not feasible.any():
                continue
            idx = np.argwhere(feasible)
            cand_n1 = n1s[idx[:, 0]]
            cand_n2 = n2s[idx[:, 1]]
            second_mass = stage1_p1.sum(axis=1)
            cand_asn = cand_n1 + cand_n2 * second_mass[idx[:, 0]]
            order = np.lexsort((cand_n1, cand_n1 + cand_n2, cand_asn))
            # exact re-check in candidate order; keep scanning through the
            # narrow window where table rounding could reorder near-ties
            window_end = math.inf
            for t in order:
                if cand_asn[t] > window_end:
                    break
                n1v, n2v = int(cand_n1[t]), int(cand_n2[t])
                plan = DoublePlan(n1v, n2v, c1, c2)
                exact_pa1 = double_accept_prob(plan, p1)
                if not exact_pa1 <= spec.beta:
                    continue
                exact_pa2 = double_accept_prob(plan, p2)
                if not exact_pa2 >= 1.0 - spec.alpha:
                    continue
                window_end = min(window_end, cand_asn[t] + 1e-9)
                asn = double_asn(plan, p1)
                key = (asn, n1v + n2v, n1v, c2, c1)
                if best_key is None or key < best_key:
                    best_key = key
                    best = DesignOutcome(
                        True, plan, PlanEvaluation(exact_pa1, exact_pa2, asn)
                    )
    return best if best is not None else _INFEASIBLE


def percentile_multiplier(a_tilde: float, gamma: float, p: float) -> float:
    """Median-table duration multiplier equivalent to a percentile-p test.

    A plan run for ``a_tilde`` times the specified 100p-th percentile life
    behaves exactly like the median-based plan run for the returned
    multiple of the specified median life:
    ``a_tilde * (log 2 / -log p) ** (1 / gamma)``.
    """
    if not (isinstance(a_tilde, (int, float)) and a_tilde > 0):
        raise DomainError(f"a_tilde must be positive, got {a_tilde!r}")
    if not (isinstance(gamma, (int, float)) and gamma > 0):
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise DomainError(f"p must lie strictly inside (0, 1), got {p!r}")
    return a_tilde * (math.log(2.0) / -math.log(p)) ** (1.0 / gamma)


def misspec_probabilities(
    plan: DoublePlan, a: float, gamma0: float, r2: float
) -> tuple[float, float]:
    """Acceptance probabilities of a double plan when the true shape is ``gamma0``.

    Returns the pair (acceptance at quality ratio 1, acceptance at quality
    ratio ``r2``), both evaluated at the failure probability implied by the
    true shape.
    """
    if not isinstance(plan, DoublePlan):
        raise DomainError(f"misspecification analysis needs a double plan, got {plan!r}")
    p_beta = double_accept_prob(
        plan, failure_prob(QualitySetting(1.0, a, gamma0))
    )
    p_alpha = double_accept_prob(
        plan, failure_prob(QualitySetting(r2, a, gamma0))
    )
    return p_beta, p_alpha
