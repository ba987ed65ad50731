"""Large-population score distributions.

When both teams draw their rosters from large talent pools whose sizes have
ratio ``r : (1 - r)``, successive finish positions become independent
Bernoulli(r) draws for team A until one roster is exhausted, after which the
remaining positions are forced.  Rational ``r`` keeps every probability
exact; floats are accepted and propagate as floats.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import backend
from .distribution import PROBABILITY, ScoreDistribution
from .errors import InputError
from .exact import Condition, label_matrix
from .meet import TEAM_A, FinishOrder, MeetFormat

Ratio = Fraction | float


def as_ratio(value) -> Ratio:
    """Coerce ints and rationals to Fraction, keep floats; validate [0, 1]."""
    if isinstance(value, Rational):
        value = Fraction(value)
    elif not isinstance(value, float):
        raise InputError(f"ratio must be a real number in [0, 1], got {value!r}")
    if not 0 <= value <= 1:
        raise InputError(f"ratio must lie in [0, 1], got {value}")
    return value


def _exhaustion_counts(labels_row, roster_a: int, roster_b: int) -> tuple[int, int]:
    """A/B counts among positions up to and including the exhaustion point.

    The exhaustion point is the earliest position at which either team's
    cumulative finisher count reaches its roster size; positions after it are
    forced and contribute no Bernoulli factors.
    """
    seen_a = seen_b = 0
    for code in labels_row:
        if code == 0:
            seen_a += 1
        else:
            seen_b += 1
        if seen_a == roster_a or seen_b == roster_b:
            break
    return seen_a, seen_b


def truncated_bernoulli_weight(order: FinishOrder, fmt: MeetFormat, ratio) -> Fraction | float:
    """Probability of one finish order under the drawing-with-replacement limit."""
    n_a = order.count(TEAM_A)
    if n_a != fmt.roster_a or len(order.labels) - n_a != fmt.roster_b:
        raise InputError("order is inconsistent with the format's roster sizes")
    r = as_ratio(ratio)
    codes = [0 if lab == TEAM_A else 1 for lab in order.labels]
    a, b = _exhaustion_counts(codes, fmt.roster_a, fmt.roster_b)
    return r**a * (1 - r) ** b


def _order_profile(fmt: MeetFormat, cond: Condition | None):
    """Per-order (margin, exhaustion A-count, exhaustion B-count) triples."""
    labels = label_matrix(fmt, cond)
    score_a, score_b = backend.score_batch(labels, fmt.scorers, fmt.displacement)
    margins = (score_b - score_a).tolist()
    profile = []
    for row, margin in zip(labels, margins):
        a, b = _exhaustion_counts(row.tolist(), fmt.roster_a, fmt.roster_b)
        profile.append((margin, a, b))
    return profile


def population_distribution(
    fmt: MeetFormat, ratio, cond: Condition | None = None
) -> ScoreDistribution:
    """Margin distribution in the large-population limit at pool ratio ``r``.

    Sums truncated-Bernoulli weights over every roster interleaving, so it
    handles displacement and asymmetric rosters uniformly.  With a condition,
    weights renormalize over the satisfying orders.
    """
    r = as_ratio(ratio)
    one = Fraction(1) if isinstance(r, Fraction) else 1.0
    max_exp = max(fmt.roster_a, fmt.roster_b)
    pow_a = list(itertools.accumulate([one] + [r] * max_exp, lambda x, y: x * y))
    pow_b = list(itertools.accumulate([one] + [1 - r] * max_exp, lambda x, y: x * y))

    weights: dict[int, Fraction | float] = {}
    total = one - one
    for margin, a, b in _order_profile(fmt, cond):
        w = pow_a[a] * pow_b[b]
        if w == 0:
            continue
        weights[margin] = weights.get(margin, 0) + w
        total += w
    if cond is not None and cond.fixed:
        if total == 0:
            raise InputError("condition has probability zero at this ratio")
        weights = {d: w / total for d, w in weights.items()}
    return ScoreDistribution(weights, PROBABILITY)


def scenario_distribution_no_displacement(scorers: int, ratio) -> ScoreDistribution:
    """No-displacement population-limit distribution from scorer scenarios.

    Without displacement the margin is determined by the first
    ``2 * scorers - 1`` finishers: enumerate those binary sequences, weight
    each ``r^k (1-r)^(2N-1-k)``, and complete the team still short of
    ``scorers`` with consecutive trailing re-ranks.  Depends only on the
    scorer count and the ratio, never on roster sizes.
    """
    if scorers < 1:
        raise InputError("scorers must be >= 1")
    r = as_ratio(ratio)
    n = scorers
    weights: dict[int, Fraction | float] = {}
    for seq in itertools.product((0, 1), repeat=2 * n - 1):
        k = seq.count(0)
        w = r**k * (1 - r) ** (2 * n - 1 - k)
        if w == 0:
            continue
        s_a = s_b = 0
        got_a = got_b = 0
        rerank = 0
        for code in seq:
            if code == 0 and got_a < n:
                got_a += 1
                rerank += 1
                s_a += rerank
            elif code == 1 and got_b < n:
                got_b += 1
                rerank += 1
                s_b += rerank
        while got_a < n:
            got_a += 1
            rerank += 1
            s_a += rerank
        while got_b < n:
            got_b += 1
            rerank += 1
            s_b += rerank
        d = s_b - s_a
        weights[d] = weights.get(d, 0) + w
    return ScoreDistribution(weights, PROBABILITY)


def finite_population_distribution(
    pool_a: int, pool_b: int, fmt: MeetFormat
) -> ScoreDistribution:
    """Exact pre-limit distribution for finite talent pools.

    Speeds are a uniformly random ranking of the ``pool_a + pool_b``
    candidates and each team fields its pool's fastest ``roster`` runners.
    The chance of an interleaving is a product of remaining-pool odds up to
    the exhaustion point, evaluated in exact rationals.
    """
    if pool_a < fmt.roster_a or pool_b < fmt.roster_b:
        raise InputError("each pool must be at least as large as its roster")
    weights: dict[int, Fraction] = {}
    joint: dict[tuple[int, int], Fraction] = {}
    labels = label_matrix(fmt, None)
    score_a, score_b = backend.score_batch(labels, fmt.scorers, fmt.displacement)
    for row, a_score, b_score in zip(labels, score_a.tolist(), score_b.tolist()):
        w = Fraction(1)
        taken_a = taken_b = 0
        for code in row.tolist():
            remaining = pool_a + pool_b - taken_a - taken_b
            if code == 0:
                w *= Fraction(pool_a - taken_a, remaining)
                taken_a += 1
            else:
                w *= Fraction(pool_b - taken_b, remaining)
                taken_b += 1
            if taken_a == fmt.roster_a or taken_b == fmt.roster_b:
                break
        d = b_score - a_score
        weights[d] = weights.get(d, 0) + w
        joint[(a_score, b_score)] = joint.get((a_score, b_score), 0) + w
    return ScoreDistribution(weights, PROBABILITY, joint)


def population_expected_scores(
    fmt: MeetFormat, ratio, leaders: tuple[str, ...] = ()
) -> tuple[Fraction | float, Fraction | float]:
    """Expected team scores in the population limit, via a prefix-state DP.

    ``leaders`` forces the teams of the first finish positions (the
    conditional law given, say, a team-A leader).  Exact for rational ratios;
    tractable for rosters far beyond enumeration range.
    """
    r = as_ratio(ratio)
    for team in leaders:
        if team not in ("A", "B"):
            raise InputError(f"leaders must be 'A' or 'B', got {team!r}")
    zero = Fraction(0) if isinstance(r, Fraction) else 0.0
    states: dict[tuple[int, int], Fraction | float] = {(0, 0): zero + 1}
    e_a = zero
    e_b = zero
    n = fmt.scorers
    for position in range(1, fmt.total_runners + 1):
        nxt: dict[tuple[int, int], Fraction | float] = {}
        for (a, b), p in states.items():
            if position <= len(leaders):
                p_a = zero + (1 if leaders[position - 1] == "A" else 0)
            elif a == fmt.roster_a:
                p_a = zero
            elif b == fmt.roster_b:
                p_a = zero + 1
            else:
                p_a = r
            if p_a > 0:
                if a < n:
                    gained = position if fmt.displacement else a + min(b, n) + 1
                    e_a += p * p_a * gained
                key = (a + 1, b)
                nxt[key] = nxt.get(key, zero) + p * p_a
            if p_a < 1:
                if b < n:
                    gained = position if fmt.displacement else b + min(a, n) + 1
                    e_b += p * (1 - p_a) * gained
                key = (a, b + 1)
                nxt[key] = nxt.get(key, zero) + p * (1 - p_a)
        states = nxt
    return e_a, e_b
