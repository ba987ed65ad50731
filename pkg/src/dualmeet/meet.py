"""Meet formats and the two rank-sum scoring rules.

A dual meet pits two teams against each other; every runner gets a 1-based
finish position and each team's score is the sum of the positions (or
re-ranked positions) of its fastest ``scorers`` runners.  The lowest score
wins.  Two scoring variants exist:

* displacement (the common rule): non-scoring finishers keep their overall
  position, so they push the other team's scorers to higher ranks;
* no displacement: non-scoring finishers are removed and the ``2 * scorers``
  scoring runners are re-ranked ``1..2*scorers`` before summing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InputError, UnsupportedFormatError

TEAM_A = "A"
TEAM_B = "B"
TEAMS = (TEAM_A, TEAM_B)


@dataclass(frozen=True)
class MeetFormat:
    """Roster sizes, scorers counted per team, and the scoring variant."""

    roster_a: int
    roster_b: int
    scorers: int
    displacement: bool = True

    def __post_init__(self) -> None:
        if self.scorers < 1:
            raise InputError("scorers must be >= 1")
        if self.roster_a < self.scorers or self.roster_b < self.scorers:
            raise InputError(
                "each team must field at least as many runners as score: "
                f"rosters ({self.roster_a}, {self.roster_b}), scorers {self.scorers}"
            )

    @classmethod
    def symmetric(cls, roster: int, scorers: int, displacement: bool = True) -> "MeetFormat":
        return cls(roster, roster, scorers, displacement)

    @property
    def total_runners(self) -> int:
        return self.roster_a + self.roster_b

    @property
    def is_symmetric(self) -> bool:
        return self.roster_a == self.roster_b

    def roster_size(self, team: str) -> int:
        if team == TEAM_A:
            return self.roster_a
        if team == TEAM_B:
            return self.roster_b
        raise InputError(f"unknown team label {team!r}")


@dataclass(frozen=True)
class FinishOrder:
    """A strict finish order encoded as a team label per overall position.

    ``labels[k]`` is the team of the runner finishing in position ``k + 1``.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        bad = set(self.labels) - set(TEAMS)
        if bad:
            raise InputError(f"labels must be 'A' or 'B', got {sorted(bad)}")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "FinishOrder":
        return cls(tuple(labels))

    @classmethod
    def from_a_positions(cls, fmt: MeetFormat, positions: Iterable[int]) -> "FinishOrder":
        """Build an order from the set of overall positions held by team A."""
        pos = set(positions)
        if len(pos) != fmt.roster_a:
            raise InputError(
                f"expected {fmt.roster_a} distinct positions for team A, got {len(pos)}"
            )
        if not all(1 <= p <= fmt.total_runners for p in pos):
            raise InputError("positions must lie in 1..total runners")
        return cls(
            tuple(TEAM_A if p in pos else TEAM_B for p in range(1, fmt.total_runners + 1))
        )

    def count(self, team: str) -> int:
        return sum(1 for lab in self.labels if lab == team)

    def positions(self, team: str) -> tuple[int, ...]:
        return tuple(p for p, lab in enumerate(self.labels, start=1) if lab == team)

    def swapped(self) -> "FinishOrder":
        """Same order with the team labels exchanged."""
        return FinishOrder(tuple(TEAM_B if lab == TEAM_A else TEAM_A for lab in self.labels))


@dataclass(frozen=True)
class ScorePair:
    a: int
    b: int

    @property
    def margin(self) -> int:
        """Victory margin for team A; positive means team A won."""
        return self.b - self.a

    def swapped(self) -> "ScorePair":
        return ScorePair(self.b, self.a)


class ScoreBounds(NamedTuple):
    min_team_score: int
    max_team_score: int
    max_margin: int


def _check_consistent(fmt: MeetFormat, order: FinishOrder) -> None:
    n_a = order.count(TEAM_A)
    n_b = len(order.labels) - n_a
    if n_a != fmt.roster_a or n_b != fmt.roster_b:
        raise InputError(
            f"order has {n_a} A / {n_b} B labels, format expects "
            f"{fmt.roster_a} / {fmt.roster_b}"
        )


def score(fmt: MeetFormat, order: FinishOrder) -> ScorePair:
    """Score a finish order under the format's scoring variant.

    With displacement each team sums the overall positions of its first
    ``scorers`` finishers.  Without displacement the two teams' scorers are
    re-ranked ``1..2*scorers`` among themselves first.
    """
    _check_consistent(fmt, order)
    n = fmt.scorers
    s_a = s_b = 0
    seen_a = seen_b = 0
    scorer_rank = 0
    for position, label in enumerate(order.labels, start=1):
        if label == TEAM_A:
            seen_a += 1
            if seen_a <= n:
                scorer_rank += 1
                s_a += position if fmt.displacement else scorer_rank
        else:
            seen_b += 1
            if seen_b <= n:
                scorer_rank += 1
                s_b += position if fmt.displacement else scorer_rank
    return ScorePair(s_a, s_b)


def margin(pair: ScorePair) -> int:
    """Victory margin for team A (``score_b - score_a``); lowest score wins."""
    return pair.margin


def score_bounds(fmt: MeetFormat) -> ScoreBounds:
    """Closed-form team-score and margin bounds for a symmetric format.

    Asymmetric formats have different bounds per team; enumerate instead.
    """
    if not fmt.is_symmetric:
        raise UnsupportedFormatError(
            "score_bounds is defined for symmetric formats only; "
            "use exact enumeration for asymmetric meets"
        )
    m, n = fmt.roster_a, fmt.scorers
    best = n * (n + 1) // 2
    return ScoreBounds(best, m * n + best, m * n)
