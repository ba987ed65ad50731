import itertools
from fractions import Fraction

import pytest

from dualmeet import (
    Condition,
    FinishOrder,
    InputError,
    MeetFormat,
    finite_population_distribution,
    iid_distribution,
    population_distribution,
    population_expected_scores,
    scenario_distribution_no_displacement,
    truncated_bernoulli_weight,
)

HALF = Fraction(1, 2)
RATIOS = [Fraction(1, 2), Fraction(11, 20), Fraction(2, 3), Fraction(4, 5)]


def all_orders(fmt):
    for combo in itertools.combinations(range(1, fmt.total_runners + 1), fmt.roster_a):
        yield FinishOrder.from_a_positions(fmt, combo)


class TestTruncatedWeight:
    def test_sweep_order(self):
        fmt = MeetFormat.symmetric(7, 5, True)
        order = FinishOrder.from_a_positions(fmt, range(1, 8))
        assert truncated_bernoulli_weight(order, fmt, HALF) == Fraction(1, 128)

    def test_hand_truncation(self):
        fmt = MeetFormat.symmetric(2, 2)
        order = FinishOrder(("A", "B", "B", "A"))
        # B exhausts at position 3; the trailing A is forced.
        assert truncated_bernoulli_weight(order, fmt, HALF) == Fraction(1, 8)

    def test_degenerate_ratio(self):
        fmt = MeetFormat.symmetric(3, 2)
        lead = FinishOrder(("A", "A", "A", "B", "B", "B"))
        trail = FinishOrder(("B", "A", "A", "A", "B", "B"))
        assert truncated_bernoulli_weight(lead, fmt, 1) == 1
        assert truncated_bernoulli_weight(trail, fmt, 1) == 0

    @pytest.mark.parametrize("fmt", [
        MeetFormat.symmetric(6, 4),
        MeetFormat.symmetric(7, 5),
        MeetFormat(6, 7, 5),
    ], ids=["sym64", "sym75", "asym675"])
    @pytest.mark.parametrize("r", [Fraction(0), Fraction(3, 10), HALF, Fraction(11, 20),
                                   Fraction(2, 3), Fraction(4, 5), Fraction(1)])
    def test_weights_sum_to_one(self, fmt, r):
        assert sum(truncated_bernoulli_weight(o, fmt, r) for o in all_orders(fmt)) == 1

    def test_rejects_mismatched_order(self):
        with pytest.raises(InputError):
            truncated_bernoulli_weight(
                FinishOrder(("A", "B")), MeetFormat.symmetric(2, 2), HALF
            )


class TestScenarioDistribution:
    def test_four_scorer_anchors(self):
        dist = scenario_distribution_no_displacement(4, HALF)
        assert dist.weight(16) == Fraction(1, 16)
        assert dist.weight(0) == Fraction(10, 128)
        assert dist.total == 1

    def test_point_mass_at_zero_ratio(self):
        dist = scenario_distribution_no_displacement(4, Fraction(0))
        assert dist.weights == {-16: Fraction(1)}

    def test_five_scorer_anchor(self):
        dist = scenario_distribution_no_displacement(5, Fraction(11, 20))
        assert dist.weight(25) == Fraction(11, 20) ** 5

    def test_float_ratio_accepted(self):
        dist = scenario_distribution_no_displacement(4, 0.8)
        assert dist.weight(16) == pytest.approx(0.4096)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("r", RATIOS)
    def test_matches_weighted_enumeration(self, n, r):
        scenario = scenario_distribution_no_displacement(n, r)
        for m in (n, n + 1, n + 2):
            full = population_distribution(MeetFormat.symmetric(m, n, False), r)
            assert scenario.weights == full.weights


class TestPopulationDistribution:
    def test_75_displacement_anchors(self):
        fmt = MeetFormat.symmetric(7, 5, True)
        at_half = population_distribution(fmt, HALF)
        assert at_half.weight(-35) == Fraction(1, 128)
        at_07 = population_distribution(fmt, Fraction(7, 10))
        assert float(at_07.weight(35)) == pytest.approx(0.0824, abs=5e-5)
        assert float(at_07.weight(23)) == pytest.approx(0.0598, abs=5e-5)

    @pytest.mark.parametrize("fmt", [
        MeetFormat.symmetric(6, 4, True),
        MeetFormat.symmetric(5, 3, False),
    ], ids=["disp64", "nodisp53"])
    def test_mirror_in_ratio(self, fmt):
        r = Fraction(7, 10)
        assert population_distribution(fmt, r).weights == \
            population_distribution(fmt, 1 - r).mirror().weights

    def test_symmetric_at_half(self):
        dist = population_distribution(MeetFormat.symmetric(6, 4, True), HALF)
        assert dist.is_symmetric()

    def test_win_probability_monotone_in_ratio(self):
        fmt = MeetFormat.symmetric(6, 4, True)
        ratios = [Fraction(k, 20) for k in range(10, 17)]
        wins = []
        for r in ratios:
            dist = population_distribution(fmt, r)
            wins.append(sum(dist.weight(d) for d in dist.support if d > 0))
        assert all(a < b for a, b in zip(wins, wins[1:]))

    def test_conditional_renormalizes(self):
        fmt = MeetFormat.symmetric(3, 2, True)
        cond = Condition.fastest()
        dist = population_distribution(fmt, Fraction(3, 10), cond)
        assert dist.total == 1
        # direct restriction: weights of conditioned orders over their mass
        mass = sum(
            truncated_bernoulli_weight(o, fmt, Fraction(3, 10))
            for o in all_orders(fmt)
            if o.labels[0] == "A"
        )
        assert mass == Fraction(3, 10)
        assert dist.weight(6) == truncated_bernoulli_weight(
            FinishOrder(("A", "A", "A", "B", "B", "B")), fmt, Fraction(3, 10)
        ) / mass

    def test_impossible_condition_raises(self):
        with pytest.raises(InputError):
            population_distribution(
                MeetFormat.symmetric(3, 2), Fraction(1), Condition({1: "B"})
            )


class TestFinitePopulation:
    def test_pools_equal_rosters_reduce_to_equally_likely_orders(self):
        fmt = MeetFormat.symmetric(4, 3, True)
        finite = finite_population_distribution(4, 4, fmt)
        assert finite.same_law(iid_distribution(fmt))
        assert finite.total == 1

    def test_converges_to_scenario_limit(self):
        fmt = MeetFormat.symmetric(6, 4, False)
        finite = finite_population_distribution(600, 600, fmt)
        limit = scenario_distribution_no_displacement(4, HALF)
        assert finite.total_variation(limit) <= 1e-3

    def test_converges_to_displacement_limit(self):
        fmt = MeetFormat.symmetric(7, 5, True)
        finite = finite_population_distribution(6000, 4000, fmt)
        limit = population_distribution(fmt, Fraction(6, 10))
        assert finite.total_variation(limit) <= 1e-3

    def test_total_variation_decreases_with_pool_size(self):
        fmt = MeetFormat.symmetric(6, 4, False)
        limit = scenario_distribution_no_displacement(4, HALF)
        tvs = [
            finite_population_distribution(pools, pools, fmt).total_variation(limit)
            for pools in (12, 60, 300)
        ]
        assert tvs[0] > tvs[1] > tvs[2]

    def test_pool_smaller_than_roster_rejected(self):
        with pytest.raises(InputError):
            finite_population_distribution(5, 9, MeetFormat.symmetric(6, 4))


class TestExpectedScores:
    def test_matches_direct_enumeration_small(self):
        fmt = MeetFormat.symmetric(3, 2, True)
        r = HALF
        num_a = num_b = Fraction(0)
        mass = Fraction(0)
        for order in all_orders(fmt):
            if order.labels[0] != "A":
                continue
            w = truncated_bernoulli_weight(order, fmt, r)
            from dualmeet import score

            pair = score(fmt, order)
            num_a += w * pair.a
            num_b += w * pair.b
            mass += w
        e_a, e_b = population_expected_scores(fmt, r, leaders=("A",))
        assert e_a == num_a / mass
        assert e_b == num_b / mass

    def test_no_displacement_variant(self):
        fmt = MeetFormat.symmetric(4, 2, False)
        e_a, e_b = population_expected_scores(fmt, HALF, leaders=("A",))
        # scores always re-rank 1..4, so the two teams split 10 points
        assert e_a + e_b == 10

    def test_large_roster_two_scorers(self):
        fmt = MeetFormat.symmetric(30, 2, True)
        e_a, e_b = population_expected_scores(fmt, HALF, leaders=("A",))
        assert abs(float(e_a) - 4) < 0.02
        assert abs(float(e_b) - 8) < 0.05

    def test_leader_validation(self):
        with pytest.raises(InputError):
            population_expected_scores(MeetFormat.symmetric(3, 2), HALF, leaders=("X",))
