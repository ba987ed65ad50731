"""Exact enumeration of finish orders under the equally-likely-orders model.

Every interleaving of the two rosters is equally likely, so distributions
are integer outcome counts over ``C(roster_a + roster_b, roster_a)`` orders,
optionally conditioned on fixed overall positions (for example "team A has
the fastest runner").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from . import backend
from .distribution import COUNT, ScoreDistribution
from .errors import ConsistencyError, InputError
from .meet import TEAM_A, TEAM_B, TEAMS, FinishOrder, MeetFormat, ScorePair, score


@dataclass(frozen=True)
class Condition:
    """Fixed team assignments for specific overall finish positions."""

    fixed: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for position, team in self.fixed.items():
            if not isinstance(position, int) or position < 1:
                raise InputError(f"positions must be positive integers, got {position!r}")
            if team not in TEAMS:
                raise InputError(f"team must be 'A' or 'B', got {team!r}")
        object.__setattr__(self, "fixed", dict(self.fixed))

    @classmethod
    def none(cls) -> "Condition":
        return cls({})

    @classmethod
    def fastest(cls, team: str = TEAM_A) -> "Condition":
        return cls({1: team})

    @classmethod
    def top_two(cls, team: str = TEAM_A) -> "Condition":
        return cls({1: team, 2: team})

    def count(self, team: str) -> int:
        return sum(1 for t in self.fixed.values() if t == team)

    def is_satisfiable(self, fmt: MeetFormat) -> bool:
        return (
            all(p <= fmt.total_runners for p in self.fixed)
            and self.count(TEAM_A) <= fmt.roster_a
            and self.count(TEAM_B) <= fmt.roster_b
        )


def _a_position_sets(fmt: MeetFormat, cond: Condition) -> Iterator[tuple[int, ...]]:
    """Team A position sets in lexicographic order, honoring fixed positions."""
    if not cond.is_satisfiable(fmt):
        return
    fixed_a = frozenset(p for p, t in cond.fixed.items() if t == TEAM_A)
    fixed_b = frozenset(p for p, t in cond.fixed.items() if t == TEAM_B)
    for combo in itertools.combinations(range(1, fmt.total_runners + 1), fmt.roster_a):
        chosen = frozenset(combo)
        if fixed_a <= chosen and not (fixed_b & chosen):
            yield combo


def enumerate_outcomes(fmt: MeetFormat, cond: Condition | None = None) -> Iterator[FinishOrder]:
    """Yield every finish order satisfying the condition, exactly once.

    Orders stream in lexicographic order of team A's position set; an
    over-constrained condition yields nothing rather than raising.
    """
    cond = cond or Condition.none()
    total = fmt.total_runners
    for combo in _a_position_sets(fmt, cond):
        chosen = set(combo)
        yield FinishOrder(
            tuple(TEAM_A if p in chosen else TEAM_B for p in range(1, total + 1))
        )


def enumerate_scored(
    fmt: MeetFormat, cond: Condition | None = None
) -> Iterator[tuple[FinishOrder, ScorePair]]:
    """Enumerate orders together with their scores, in enumeration order."""
    for order in enumerate_outcomes(fmt, cond):
        yield order, score(fmt, order)


def label_matrix(fmt: MeetFormat, cond: Condition | None = None) -> np.ndarray:
    """All conditioned orders as one ``(n_orders, total_runners)`` uint8 matrix."""
    cond = cond or Condition.none()
    total = fmt.total_runners
    combos = list(_a_position_sets(fmt, cond))
    labels = np.ones((len(combos), total), dtype=np.uint8)
    for row, combo in enumerate(combos):
        for p in combo:
            labels[row, p - 1] = 0
    return labels


def _bin_scores(score_a: np.ndarray, score_b: np.ndarray) -> ScoreDistribution:
    weights: dict[int, int] = {}
    joint: dict[tuple[int, int], int] = {}
    for a, b in zip(score_a.tolist(), score_b.tolist()):
        d = b - a
        weights[d] = weights.get(d, 0) + 1
        joint[(a, b)] = joint.get((a, b), 0) + 1
    return ScoreDistribution(weights, COUNT, joint)


def iid_distribution(fmt: MeetFormat, cond: Condition | None = None) -> ScoreDistribution:
    """Exact count-weighted margin distribution over all conditioned orders."""
    labels = label_matrix(fmt, cond)
    score_a, score_b = backend.score_batch(labels, fmt.scorers, fmt.displacement)
    return _bin_scores(score_a, score_b)


_SHIFT_CONDITIONS: dict[frozenset[int], dict[int, str]] = {
    frozenset({1}): {1: TEAM_A},
    frozenset({1, 3}): {1: TEAM_A, 2: TEAM_B, 3: TEAM_A},
    frozenset({2, 3}): {1: TEAM_B, 2: TEAM_A, 3: TEAM_A},
}


def shifted_condition_distribution(
    fmt: MeetFormat, base_positions: set[int], shift: int
) -> ScoreDistribution:
    """Margin distribution for team A holding ``base_positions``, via the
    leader-table shift rule.

    When the top two places split between the teams, the race conditioned on
    team A also taking third place scores exactly like the one-runner-smaller
    format conditioned on a team-A leader, shifted by the point the top-two
    split contributes: ``{1, 3}`` is that base distribution shifted by +1 and
    ``{2, 3}`` by -1 (``{1}`` with shift 0 is the base itself).  The result is
    always cross-checked against direct enumeration.
    """
    if not fmt.is_symmetric:
        raise InputError("the shift rule is stated for symmetric formats")
    key = frozenset(base_positions)
    if key not in _SHIFT_CONDITIONS:
        raise InputError(
            f"unsupported base positions {sorted(base_positions)}; "
            "known configurations: {1}, {1, 3}, {2, 3}"
        )
    if key == frozenset({1}):
        base = iid_distribution(fmt, Condition.fastest())
    else:
        sub_fmt = MeetFormat(
            fmt.roster_a - 1, fmt.roster_b - 1, fmt.scorers - 1, fmt.displacement
        )
        base = iid_distribution(sub_fmt, Condition.fastest())
    shifted = base.shifted(shift)
    direct = iid_distribution(fmt, Condition(_SHIFT_CONDITIONS[key]))
    if shifted.weights != direct.weights:
        raise ConsistencyError(
            f"shift rule failed for positions {sorted(base_positions)} "
            f"with shift {shift:+d} on {fmt}"
        )
    return shifted
