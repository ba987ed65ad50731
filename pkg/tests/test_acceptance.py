"""Acceptance gate: every criterion prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
execute.  Criterion 4's (7,5)-displacement case asserts the quoted standard
deviation 7.100; that figure contradicts the same source's own exact table
counts (criterion 3, which passes and forces 7.1992), so the assertion is
expected to fail and is left failing on purpose.
"""

import functools
from fractions import Fraction

import pytest

from dualmeet import (
    Condition,
    MeetFormat,
    Roster,
    Runner,
    UniformTime,
    enumerate_scored,
    iid_distribution,
    pairwise_win_probability,
    population_distribution,
    population_expected_scores,
    scenario_distribution_no_displacement,
    simulate_meet,
    summarize,
    truncated_bernoulli_weight,
)
from dualmeet.reference import (
    check_iid_table,
    check_population_table,
    check_stats_table,
    load_fixture,
)
from dualmeet.stats import quantile

from oracles import rank_sum_null_counts
from test_exact import THREE_TWO_DISPLACEMENT_PAIRS
from test_population import all_orders

TOL = 0.005


def criterion(label):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[acceptance] {label}: FAIL")
                raise
            print(f"[acceptance] {label}: PASS")

        return wrapper

    return decorate


@criterion("criterion 1 — (6,4) no-displacement leader table")
def test_criterion_01_table_counts():
    result, dist = check_iid_table(load_fixture("iid_m6n4_nodisp_first1"))
    assert result.passed, result.failures
    assert [dist.weight(d) for d in dist.support] == [
        21, 15, 25, 35, 45, 40, 55, 45, 50, 46, 36, 21, 28,
    ]
    assert dist.total == 462


@criterion("criterion 2 — (6,4) displacement leader table and prose")
def test_criterion_02_displacement_table():
    result, dist = check_iid_table(load_fixture("iid_m6n4_disp_first1"))
    assert result.passed, result.failures
    assert len(dist.support) == 39
    assert dist.support[0] == -14 and dist.support[-1] == 24
    s = summarize(dist)
    assert abs(float(s.p_win) - 0.6991) <= TOL
    assert abs(float(s.p_tie) - 0.0584) <= TOL
    assert abs(float(s.mean_win_margin) - 9.08) <= TOL
    # the quoted 0.30 loss probability contradicts the table's own counts
    assert s.p_loss == Fraction(112, 462)
    assert abs(float(s.p_loss) - 0.30) > TOL


@criterion("criterion 3 — remaining leader/top-two tables and prose")
def test_criterion_03_remaining_tables():
    for name in (
        "iid_m6n4_nodisp_first2",
        "iid_m7n5_nodisp_first1",
        "iid_m7n5_disp_first1",
        "iid_m7n5_disp_first2",
    ):
        result, _ = check_iid_table(load_fixture(name))
        assert result.passed, (name, result.failures)

    s = summarize(iid_distribution(MeetFormat.symmetric(7, 5, True), Condition.fastest()))
    assert abs(float(s.p_win) - 0.7022) <= TOL
    assert abs(float(s.mean_win_margin) - 11.66) <= TOL
    assert abs(float(-s.mean_loss_margin) - 6.882) <= TOL

    s = summarize(iid_distribution(MeetFormat.symmetric(7, 5, True), Condition.top_two()))
    assert abs(float(s.p_win) - 0.904) <= TOL
    assert abs(float(s.mean_win_margin) - 14.06) <= TOL
    assert abs(float(s.p_tie) - 0.009) <= TOL


def _symmetrized_summary(m, n, displacement):
    dist = iid_distribution(MeetFormat.symmetric(m, n, displacement), Condition.fastest())
    return summarize(dist.symmetrized(), quantile_levels=(0.75, 0.9))


@criterion("criterion 4 — (6,4) no-displacement unconditional statistics")
def test_criterion_04_m6n4_nodisp():
    s = _symmetrized_summary(6, 4, False)
    assert abs(float(s.mean_margin) - 6.56277) <= TOL
    assert abs(s.std_margin - 4.52355) <= TOL
    assert s.median == 6 and s.quantiles[0.75] == 10 and s.quantiles[0.9] == 14


@criterion("criterion 4 — (6,4) displacement unconditional statistics")
def test_criterion_04_m6n4_disp():
    s = _symmetrized_summary(6, 4, True)
    assert abs(float(s.mean_margin) - 7.554) <= TOL
    assert abs(s.std_margin - 5.334) <= TOL
    assert s.median == Fraction(13, 2)
    assert s.quantiles[0.75] == 11 and s.quantiles[0.9] == 15


@criterion("criterion 4 — (7,5) no-displacement unconditional statistics")
def test_criterion_04_m7n5_nodisp():
    s = _symmetrized_summary(7, 5, False)
    assert abs(float(s.mean_margin) - 9.108) <= TOL
    assert abs(s.std_margin - 6.283) <= TOL
    assert s.median == 9 and s.quantiles[0.9] == 19


@criterion("criterion 4 — (7,5) displacement unconditional statistics")
def test_criterion_04_m7n5_disp():
    s = _symmetrized_summary(7, 5, True)
    assert abs(float(s.mean_margin) - 10.12) <= TOL
    assert s.median == 9 and s.quantiles[0.75] == 15 and s.quantiles[0.9] == 21
    # Stated value 7.100; the exact counts behind criterion 3 force 7.1992,
    # so this assertion documents a source-internal contradiction and is
    # expected to fail (see the repository notes for the analysis).
    assert abs(s.std_margin - 7.100) <= TOL, (
        f"std of |margin| computed from the exact table counts is "
        f"{s.std_margin:.4f}; the quoted 7.100 is inconsistent with those "
        f"counts, which criterion 3 verifies exactly"
    )


@criterion("criterion 5 — population statistic tables")
def test_criterion_05_stat_tables():
    for name in ("stats_n4_nodisp", "stats_m6n4_disp", "stats_n5_nodisp", "stats_m7n5_disp"):
        result = check_stats_table(load_fixture(name))
        assert result.passed, (name, result.failures)
        assert result.cells == 42


@criterion("criterion 6 — population probability tables")
def test_criterion_06_probability_tables():
    for name in ("pop_n4_nodisp", "pop_m6n4_disp", "pop_n5_nodisp", "pop_m7n5_disp"):
        result = check_population_table(load_fixture(name))
        assert result.passed, (name, result.failures)

    assert scenario_distribution_no_displacement(4, Fraction(4, 5)).weight(16) == Fraction(
        4, 5
    ) ** 4  # 0.4096
    p25 = scenario_distribution_no_displacement(5, Fraction(7, 10)).weight(25)
    assert abs(float(p25) - 0.1681) < 5e-5
    at_half = population_distribution(MeetFormat.symmetric(7, 5, True), Fraction(1, 2))
    assert at_half.weight(-35) == Fraction(1, 128)  # 0.0078


@criterion("criterion 7 — oracle equivalences and weight identities")
def test_criterion_07_oracle_equivalences():
    ratios = [Fraction(1, 2), Fraction(11, 20), Fraction(2, 3), Fraction(4, 5)]
    for n in (2, 3, 4, 5):
        for r in ratios:
            scenario = scenario_distribution_no_displacement(n, r)
            assert scenario.total == 1
            for m in (n, n + 1, n + 2):
                fmt = MeetFormat.symmetric(m, n, False)
                full = population_distribution(fmt, r)
                assert scenario.weights == full.weights, (n, m, r)

    for fmt in (MeetFormat.symmetric(6, 4), MeetFormat(6, 7, 5)):
        for r in ratios:
            total = sum(truncated_bernoulli_weight(o, fmt, r) for o in all_orders(fmt))
            assert total == 1

    for displacement in (True, False):
        fmt = MeetFormat.symmetric(6, 4, displacement)
        conditional = iid_distribution(fmt, Condition.fastest())
        unconditional = iid_distribution(fmt)
        assert conditional.mirror().mirror().weights == conditional.weights
        assert (conditional + conditional.mirror()).weights == unconditional.weights
        assert conditional.symmetrized().same_law(unconditional.absolute())


@criterion("criterion 8 — structural facts and worked examples")
def test_criterion_08_structural_facts():
    from dualmeet import score, score_bounds

    for m, n in ((6, 4), (7, 5)):
        disp = MeetFormat.symmetric(m, n, True)
        nodisp = MeetFormat.symmetric(m, n, False)
        bounds = score_bounds(disp)
        margins_disp, margins_nodisp = [], []
        for order, pair in enumerate_scored(disp):
            margins_disp.append(pair.margin)
            assert bounds.min_team_score <= pair.a <= bounds.max_team_score
        for order, pair in enumerate_scored(nodisp):
            margins_nodisp.append(pair.margin)
            assert pair.a + pair.b == n * (2 * n + 1)
        assert max(margins_disp) == m * n
        parity = 1 if n % 2 else 0
        assert all(d % 2 == parity for d in margins_nodisp)
        assert (0 in margins_nodisp) == (n % 2 == 0)

    for m in (5, 6, 7):
        for displacement in (True, False):
            fmt = MeetFormat.symmetric(m, 5, displacement)
            dist = iid_distribution(fmt, Condition({1: "A", 2: "A", 3: "A"}))
            assert min(dist.support) > 0

    top_two = iid_distribution(MeetFormat.symmetric(6, 4, False), Condition.top_two())
    assert min(top_two.support) >= 0

    fmt = MeetFormat.symmetric(3, 2, True)
    assert [(p.a, p.b) for _, p in enumerate_scored(fmt)] == THREE_TWO_DISPLACEMENT_PAIRS
    nodisp = iid_distribution(MeetFormat.symmetric(3, 2, False))
    assert nodisp.probability(0) == Fraction(3, 10)
    assert iid_distribution(MeetFormat.symmetric(2, 2)).probability(0) == Fraction(1, 3)


@criterion("criterion 9 — rank-sum null cross-check")
def test_criterion_09_rank_sum():
    for n in (2, 3, 4, 5):
        dist = iid_distribution(MeetFormat.symmetric(n, n, False))
        marginal: dict[int, int] = {}
        for (_, s_b), count in dist.joint.items():
            marginal[s_b] = marginal.get(s_b, 0) + count
        assert marginal == rank_sum_null_counts(n)

    wide = iid_distribution(MeetFormat.symmetric(6, 4, False)).normalized()
    null = rank_sum_null_counts(4)
    implied = {2 * s - 36: Fraction(c, 70) for s, c in null.items()}
    assert {d: wide.weight(d) for d in wide.support} != implied


@criterion("criterion 10 — Monte Carlo convergence and quadrature")
def test_criterion_10_monte_carlo():
    fmt = MeetFormat.symmetric(7, 5, True)
    runners = [Runner("A", f"a{k}", UniformTime(540, 600)) for k in range(7)]
    runners += [Runner("B", f"b{k}", UniformTime(540, 600)) for k in range(7)]
    sim = simulate_meet(fmt, Roster(tuple(runners)), 1_000_000, seed=20_240_601)
    assert sim.total == 1_000_000
    assert sim.total_variation(iid_distribution(fmt)) <= 0.005

    p = pairwise_win_probability(UniformTime(9, 11), UniformTime(10, 12))
    assert abs(p - 7 / 8) <= 1e-9


@criterion("criterion 11 — two-scorer large-roster population means")
def test_criterion_11_large_roster_means():
    fmt = MeetFormat.symmetric(30, 2, True)
    e_a, e_b = population_expected_scores(fmt, Fraction(1, 2), leaders=("A",))
    assert abs(float(e_a) - 4) <= 0.02
    assert abs(float(e_b) - 8) <= 0.05


@criterion("stat-table 0.9 quantiles use the signed margin distribution")
def test_signed_quantile_convention_documented():
    # At even pool split the quoted 0.9-quantile row (12 for four scorers,
    # no displacement) matches the signed-margin quantile; the folded
    # |margin| distribution would give 16 instead.
    dist = scenario_distribution_no_displacement(4, Fraction(1, 2))
    assert quantile(dist, Fraction(9, 10)) == 12
    assert quantile(dist.absolute(), Fraction(9, 10)) == 16
