"""Exact score distributions for cross-country dual meets.

Rank-sum scoring engines for two-team meets: exact enumeration when every
finish order is equally likely, the large-population Bernoulli limit,
finite talent pools, strict speed tiers, and seeded Monte Carlo races from
per-runner finishing-time models.
"""

from .backend import BACKEND
from .distribution import COUNT, PROBABILITY, ScoreDistribution, from_pairs
from .errors import ConsistencyError, InputError, UnsupportedFormatError
from .exact import (
    Condition,
    enumerate_outcomes,
    enumerate_scored,
    iid_distribution,
    shifted_condition_distribution,
)
from .meet import (
    TEAM_A,
    TEAM_B,
    FinishOrder,
    MeetFormat,
    ScoreBounds,
    ScorePair,
    margin,
    score,
    score_bounds,
)
from .population import (
    finite_population_distribution,
    population_distribution,
    population_expected_scores,
    scenario_distribution_no_displacement,
    truncated_bernoulli_weight,
)
from .racesim import (
    BetaTime,
    PointTime,
    Roster,
    Runner,
    TierSpec,
    UniformTime,
    injury_distribution,
    pairwise_win_probability,
    simulate_meet,
    tiered_distribution,
)
from .reference import reproduce
from .rosterfile import load_roster, roster_from_dict
from .stats import MeetSummary, compare_summaries, quantile, summarize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "COUNT",
    "PROBABILITY",
    "TEAM_A",
    "TEAM_B",
    "BetaTime",
    "Condition",
    "ConsistencyError",
    "FinishOrder",
    "InputError",
    "MeetFormat",
    "MeetSummary",
    "PointTime",
    "Roster",
    "Runner",
    "ScoreBounds",
    "ScoreDistribution",
    "ScorePair",
    "TierSpec",
    "UniformTime",
    "UnsupportedFormatError",
    "compare_summaries",
    "enumerate_outcomes",
    "enumerate_scored",
    "finite_population_distribution",
    "from_pairs",
    "iid_distribution",
    "injury_distribution",
    "load_roster",
    "margin",
    "pairwise_win_probability",
    "population_distribution",
    "population_expected_scores",
    "quantile",
    "reproduce",
    "roster_from_dict",
    "scenario_distribution_no_displacement",
    "score",
    "score_bounds",
    "shifted_condition_distribution",
    "simulate_meet",
    "summarize",
    "symmetrize",
    "tiered_distribution",
    "truncated_bernoulli_weight",
]


def symmetrize(dist: ScoreDistribution) -> ScoreDistribution:
    """Unconditional absolute-margin law of a one-sided conditional."""
    return dist.symmetrized()
