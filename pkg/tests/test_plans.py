import math
from fractions import Fraction

import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from iwsampling.distributions import QualitySetting, failure_prob
from iwsampling.errors import DomainError
from iwsampling.plans import (
    DoublePlan,
    GroupPlan,
    SinglePlan,
    binom_cdf_tail,
    double_accept_prob,
    double_asn,
    first_decision_prob,
    group_accept_prob,
    oc_curve,
    single_accept_prob,
)

from _oracles import all_double_plans, exact_double_accept

P1_075_A05 = failure_prob(QualitySetting(1.0, 0.5, 0.75))
P2_075_A05 = failure_prob(QualitySetting(2.0, 0.5, 0.75))


@st.composite
def double_plans(draw, n1_max=30):
    n1 = draw(st.integers(2, n1_max))
    n2 = draw(st.integers(1, n1))
    c2 = draw(st.integers(1, n1))
    c1 = draw(st.integers(0, c2 - 1))
    return DoublePlan(n1, n2, c1, c2)


class TestPlanValidation:
    def test_single_plan_bounds(self):
        with pytest.raises(DomainError):
            SinglePlan(0, 0)
        with pytest.raises(DomainError):
            SinglePlan(3, 4)

    def test_double_plan_bounds(self):
        with pytest.raises(DomainError):
            DoublePlan(5, 3, 2, 2)  # needs c1 < c2
        with pytest.raises(DomainError):
            DoublePlan(3, 4, 0, 1)  # needs n2 <= n1
        with pytest.raises(DomainError):
            DoublePlan(3, 3, 0, 4)  # needs c2 <= n1

    def test_group_plan_bounds(self):
        with pytest.raises(DomainError):
            GroupPlan(0, 5, 1)
        with pytest.raises(DomainError):
            GroupPlan(2, 5, 6)
        assert GroupPlan(4, 5, 2).n == 20


class TestBinomTail:
    def test_full_support_is_one(self):
        assert binom_cdf_tail(7, 7, 0.3) == 1.0

    def test_zero_failure_chance(self):
        assert binom_cdf_tail(9, 0, 0.0) == 1.0
        assert binom_cdf_tail(9, 3, 0.0) == 1.0

    def test_certain_failure(self):
        assert binom_cdf_tail(9, 8, 1.0) == 0.0
        assert binom_cdf_tail(9, 9, 1.0) == 1.0

    def test_zero_acceptance_direct_power(self):
        assert binom_cdf_tail(4, 0, 0.3117) == pytest.approx(0.6883**4, rel=1e-14)

    def test_rejects_c_above_n(self):
        with pytest.raises(DomainError):
            binom_cdf_tail(4, 5, 0.2)

    @given(
        n=st.integers(1, 400),
        frac=st.floats(min_value=0.0, max_value=1.0),
        p=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_matches_scipy(self, n, frac, p):
        c = min(n, int(frac * n))
        assert binom_cdf_tail(n, c, p) == pytest.approx(
            float(scipy.stats.binom.cdf(c, n, p)), rel=1e-9, abs=1e-12
        )

    def test_underflowing_leading_term(self):
        # (1-p)**n underflows but the mass at c is essentially one
        assert binom_cdf_tail(1000, 950, 0.9) == pytest.approx(
            float(scipy.stats.binom.cdf(950, 1000, 0.9)), rel=1e-9
        )

    def test_deep_left_tail_keeps_leading_digits(self):
        mine = binom_cdf_tail(1000, 60, 0.55)
        ref = float(scipy.stats.binom.cdf(60, 1000, 0.55))
        assert mine == pytest.approx(ref, rel=1e-6)
        assert mine < 1e-200


class TestSingleAccept:
    def test_always_accept_when_c_equals_n(self):
        for p in (0.0, 0.3, 1.0):
            assert single_accept_prob(SinglePlan(6, 6), p) == 1.0

    def test_two_units_enumeration(self):
        assert single_accept_prob(SinglePlan(2, 0), 0.5) == pytest.approx(0.25, rel=1e-15)

    def test_feasibility_of_reference_plan(self):
        # (51, 11) satisfies the producer constraint at quality ratio 2
        assert single_accept_prob(SinglePlan(51, 11), P2_075_A05) >= 0.95
        assert single_accept_prob(SinglePlan(51, 11), P1_075_A05) <= 0.10


class TestDoubleAccept:
    def test_zero_one_scheme_enumeration(self):
        # accept paths at p = 1/2: no failures (1/4) or one failure then
        # none in the second unit (1/2 * 1/2)
        assert double_accept_prob(DoublePlan(2, 1, 0, 1), 0.5) == pytest.approx(0.5, rel=1e-15)

    def test_reference_plan_probabilities(self):
        p_b = failure_prob(QualitySetting(1.0, 0.5, 1.05))
        p_a = failure_prob(QualitySetting(2.0, 0.5, 1.05))
        assert double_accept_prob(DoublePlan(9, 7, 0, 2), p_b) == pytest.approx(0.2475, abs=1e-4)
        assert double_accept_prob(DoublePlan(9, 7, 0, 2), p_a) == pytest.approx(0.9568, abs=1e-4)

    def test_endpoints(self):
        plan = DoublePlan(10, 4, 1, 3)
        assert double_accept_prob(plan, 0.0) == 1.0
        assert double_accept_prob(plan, 1.0) == 0.0

    @pytest.mark.parametrize("p", [Fraction(3, 10), Fraction(1, 2)])
    def test_exact_enumeration_small_lattice(self, p):
        # the acceptance suite runs the full stage-size-8 sweep; this spot
        # version keeps the module self-checking
        pf = float(p)
        for plan in all_double_plans(6, 6):
            exact = exact_double_accept(plan.n1, plan.n2, plan.c1, plan.c2, p)
            assert double_accept_prob(plan, pf) == pytest.approx(float(exact), abs=1e-12)

    def test_adjacent_acceptance_numbers_match_enumeration(self):
        # c1 = c2 - 1 with a full-size second stage, checked exactly
        for n1 in range(2, 7):
            for c2 in range(1, n1 + 1):
                plan = DoublePlan(n1, n1, c2 - 1, c2)
                exact = exact_double_accept(n1, n1, c2 - 1, c2, Fraction(3, 10))
                assert double_accept_prob(plan, 0.3) == pytest.approx(float(exact), abs=1e-12)

    def test_single_stage_reduction(self):
        # an empty indecision band reduces the two-stage formula to the
        # plain binomial tail
        for n, c in [(5, 1), (9, 4), (14, 0)]:
            p = 0.27
            stage_only = binom_cdf_tail(n, c, p)
            assert single_accept_prob(SinglePlan(n, c), p) == stage_only
            expanded = exact_double_accept(n, 3, c, c, Fraction(27, 100))
            # widen c2 by zero: the j-sum over (c1, c2] is empty
            assert float(expanded) == pytest.approx(stage_only, abs=1e-12)

    @given(plan=double_plans(), idx=st.integers(0, 18))
    def test_monotone_in_p(self, plan, idx):
        grid = [k / 19 for k in range(20)]
        a = double_accept_prob(plan, grid[idx])
        b = double_accept_prob(plan, grid[idx + 1] if idx < 19 else 1.0)
        assert b <= a + 1e-12


class TestFirstDecisionAsn:
    def test_no_failures_decides_immediately(self):
        assert first_decision_prob(DoublePlan(8, 3, 1, 4), 0.0) == 1.0

    def test_all_fail_decides_immediately(self):
        assert first_decision_prob(DoublePlan(8, 3, 1, 4), 1.0) == 1.0

    def test_zero_one_scheme_half(self):
        assert first_decision_prob(DoublePlan(2, 1, 0, 1), 0.5) == pytest.approx(0.5, rel=1e-15)

    def test_asn_zero_one_scheme(self):
        assert double_asn(DoublePlan(2, 1, 0, 1), 0.5) == pytest.approx(2.5, rel=1e-15)

    def test_asn_at_p_zero_is_first_stage(self):
        assert double_asn(DoublePlan(12, 5, 2, 4), 0.0) == 12.0

    def test_asn_reference_plan(self):
        assert double_asn(DoublePlan(39, 12, 7, 11), P1_075_A05) == pytest.approx(43.43, abs=0.01)

    @given(plan=double_plans(), p=st.floats(min_value=0.0, max_value=1.0))
    def test_asn_bounds(self, plan, p):
        asn = double_asn(plan, p)
        assert plan.n1 - 1e-9 <= asn <= plan.n1 + plan.n2 + 1e-9

    @given(plan=double_plans(), p=st.floats(min_value=0.0, max_value=1.0))
    def test_asn_consistent_with_first_decision(self, plan, p):
        expected = plan.n1 + plan.n2 * (1.0 - first_decision_prob(plan, p))
        assert double_asn(plan, p) == pytest.approx(expected, abs=1e-12)


class TestGroupAccept:
    def test_single_group_reduces_to_single_plan(self):
        for p in (0.0, 0.2, 0.7, 1.0):
            assert group_accept_prob(GroupPlan(1, 9, 3), p) == single_accept_prob(
                SinglePlan(9, 3), p
            )

    def test_reference_plan_producer_point(self):
        assert group_accept_prob(GroupPlan(40, 10, 5), P2_075_A05) == pytest.approx(
            0.9615, abs=1e-4
        )

    def test_accepting_every_count_is_certain(self):
        for g in (1, 4, 100):
            assert group_accept_prob(GroupPlan(g, 6, 6), 0.83) == 1.0

    @given(
        g1=st.integers(1, 12), g2=st.integers(1, 12),
        r=st.integers(1, 10), frac=st.floats(0.0, 1.0),
        p=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_product_over_independent_blocks(self, g1, g2, r, frac, p):
        c = min(r, int(frac * r))
        joint = group_accept_prob(GroupPlan(g1 + g2, r, c), p)
        split = group_accept_prob(GroupPlan(g1, r, c), p) * group_accept_prob(
            GroupPlan(g2, r, c), p
        )
        assert joint == pytest.approx(split, rel=1e-12, abs=1e-300)

    @given(g=st.integers(1, 40), p=st.floats(min_value=0.0, max_value=1.0))
    def test_monotone_in_group_count(self, g, p):
        a = group_accept_prob(GroupPlan(g, 5, 2), p)
        b = group_accept_prob(GroupPlan(g + 1, 5, 2), p)
        assert b <= a + 1e-15


class TestOcCurve:
    def test_reference_double_plan_constraints(self):
        pts = oc_curve(DoublePlan(39, 12, 7, 11), 0.75, 0.5, [1.0, 2.0])
        assert pts[0].p_accept <= 0.10
        assert pts[1].p_accept >= 0.95

    def test_duplicate_ratios_collapse(self):
        pts = oc_curve(SinglePlan(10, 2), 0.75, 0.5, [2.0, 2.0])
        assert len(pts) == 1

    def test_matches_pointwise_recomputation(self):
        ratios = [1.0, 1.5, 2.0, 3.0, 6.0]
        pts = oc_curve(SinglePlan(51, 11), 0.75, 0.5, ratios)
        for pt in pts:
            p = failure_prob(QualitySetting(pt.ratio, 0.5, 0.75))
            assert pt.p_accept == single_accept_prob(SinglePlan(51, 11), p)
            assert pt.asn == 51.0

    def test_probabilities_nondecreasing_in_ratio(self):
        ratios = [0.5 + 0.25 * k for k in range(20)]
        pts = oc_curve(GroupPlan(4, 5, 1), 1.1, 0.7, ratios)
        vals = [pt.p_accept for pt in pts]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_rejects_empty_and_decreasing(self):
        with pytest.raises(DomainError):
            oc_curve(SinglePlan(5, 1), 1.0, 1.0, [])
        with pytest.raises(DomainError):
            oc_curve(SinglePlan(5, 1), 1.0, 1.0, [2.0, 1.0])
