"""Finishing-time models, Monte Carlo meets, tier models, and injury formats."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate
from scipy import stats as spstats

from . import backend
from .distribution import COUNT, ScoreDistribution
from .errors import InputError
from .exact import Condition, iid_distribution
from .meet import TEAM_A, TEAM_B, TEAMS, MeetFormat

QUAD_ABS_TOL = 1e-9


@dataclass(frozen=True)
class UniformTime:
    """Finish time uniform on ``[lower, upper]`` seconds."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise InputError("uniform bounds must be finite")
        if not 0 < self.lower < self.upper:
            raise InputError("uniform bounds must satisfy 0 < lower < upper")

    def cdf(self, t: float) -> float:
        if t <= self.lower:
            return 0.0
        if t >= self.upper:
            return 1.0
        return (t - self.lower) / (self.upper - self.lower)

    def pdf(self, t: float) -> float:
        return 1.0 / (self.upper - self.lower) if self.lower <= t <= self.upper else 0.0

    def bounds(self) -> tuple[float, float]:
        return self.lower, self.upper

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size)


@dataclass(frozen=True)
class BetaTime:
    """Shifted, stretched beta: ``shift + scale * Beta(alpha, beta)`` seconds.

    A right-skewed choice like ``alpha=1.5, beta=3`` peaks early with a long
    slow tail.
    """

    alpha: float
    beta: float
    shift: float
    scale: float

    def __post_init__(self) -> None:
        values = (self.alpha, self.beta, self.shift, self.scale)
        if not all(math.isfinite(v) for v in values):
            raise InputError("beta parameters must be finite")
        if self.alpha <= 0 or self.beta <= 0:
            raise InputError("beta shape parameters must be positive")
        if self.scale <= 0:
            raise InputError("beta scale must be positive")
        if self.shift < 0:
            raise InputError("beta shift must be nonnegative")

    def _frozen(self):
        return spstats.beta(self.alpha, self.beta, loc=self.shift, scale=self.scale)

    def cdf(self, t: float) -> float:
        return float(self._frozen().cdf(t))

    def pdf(self, t: float) -> float:
        return float(self._frozen().pdf(t))

    def bounds(self) -> tuple[float, float]:
        return self.shift, self.shift + self.scale

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.shift + self.scale * rng.beta(self.alpha, self.beta, size)


@dataclass(frozen=True)
class PointTime:
    """Deterministic finish time (useful for tier-style fixtures)."""

    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value) or self.value <= 0:
            raise InputError("point time must be finite and positive")

    def cdf(self, t: float) -> float:
        return 1.0 if t >= self.value else 0.0

    def bounds(self) -> tuple[float, float]:
        return self.value, self.value

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.full(size, self.value)


TimeModel = Union[UniformTime, BetaTime, PointTime]


@dataclass(frozen=True)
class Runner:
    team: str
    id: str
    model: TimeModel

    def __post_init__(self) -> None:
        if self.team not in TEAMS:
            raise InputError(f"runner team must be 'A' or 'B', got {self.team!r}")


@dataclass(frozen=True)
class Roster:
    runners: tuple[Runner, ...]

    def __post_init__(self) -> None:
        ids = [r.id for r in self.runners]
        if len(set(ids)) != len(ids):
            raise InputError("runner ids must be unique")

    def team_count(self, team: str) -> int:
        return sum(1 for r in self.runners if r.team == team)

    def matches(self, fmt: MeetFormat) -> bool:
        return (
            self.team_count(TEAM_A) == fmt.roster_a
            and self.team_count(TEAM_B) == fmt.roster_b
        )


def _uniform_uniform_win(i: UniformTime, j: UniformTime) -> float:
    # P(X < Y) for X ~ U(i), Y ~ U(j): integrate F_X over j's support.
    lo, hi = j.lower, j.upper
    area = 0.0
    seg_lo, seg_hi = max(lo, i.lower), min(hi, i.upper)
    if seg_hi > seg_lo:
        area += ((seg_hi - i.lower) ** 2 - (seg_lo - i.lower) ** 2) / (
            2.0 * (i.upper - i.lower)
        )
    if hi > i.upper:
        area += hi - max(lo, i.upper)
    return area / (hi - lo)


def pairwise_win_probability(i: TimeModel, j: TimeModel) -> float:
    """P(runner ``i`` finishes ahead of runner ``j``), in [0, 1].

    Closed forms cover point masses and uniform pairs; any pair involving a
    beta model integrates the first runner's CDF against the second's density
    by adaptive quadrature to within ``1e-9`` absolute error.
    """
    if isinstance(i, PointTime) and isinstance(j, PointTime):
        return 1.0 if i.value < j.value else 0.0
    if isinstance(i, PointTime):
        return 1.0 - j.cdf(i.value)
    if isinstance(j, PointTime):
        return i.cdf(j.value)
    if isinstance(i, UniformTime) and isinstance(j, UniformTime):
        return _uniform_uniform_win(i, j)
    lo, hi = j.bounds()
    kinks = sorted(t for t in i.bounds() if lo < t < hi)
    value, err = integrate.quad(
        lambda t: i.cdf(t) * j.pdf(t),
        lo,
        hi,
        points=kinks or None,
        epsabs=QUAD_ABS_TOL / 10,
        limit=200,
    )
    if err > QUAD_ABS_TOL:
        raise InputError(
            f"quadrature error {err:.2e} exceeds the {QUAD_ABS_TOL} tolerance"
        )
    return min(1.0, max(0.0, value))


def simulate_meet(
    fmt: MeetFormat, roster: Roster, samples: int, seed: int, chunk_size: int = 1 << 17
) -> ScoreDistribution:
    """Empirical margin distribution from seeded Monte Carlo races.

    Each runner draws times from an own PCG64 stream spawned from ``seed`` in
    roster order, so results are reproducible for a given (seed, samples,
    roster order) and extending ``samples`` only appends races.  Exact time
    ties break toward the lexicographically smaller runner id.
    """
    if samples < 1:
        raise InputError("samples must be >= 1")
    if not roster.matches(fmt):
        raise InputError(
            f"roster fields {roster.team_count(TEAM_A)} A / "
            f"{roster.team_count(TEAM_B)} B runners, format expects "
            f"{fmt.roster_a} / {fmt.roster_b}"
        )
    runners = roster.runners
    streams = [
        np.random.Generator(np.random.PCG64(ss))
        for ss in np.random.SeedSequence(seed).spawn(len(runners))
    ]
    team_code = np.array(
        [0 if r.team == TEAM_A else 1 for r in runners], dtype=np.uint8
    )
    tie_rank = np.argsort(np.argsort([r.id for r in runners])).astype(np.int64)

    weights: dict[int, int] = {}
    joint: dict[tuple[int, int], int] = {}
    remaining = samples
    while remaining > 0:
        chunk = min(chunk_size, remaining)
        remaining -= chunk
        times = np.empty((chunk, len(runners)))
        for column, (runner, rng) in enumerate(zip(runners, streams)):
            times[:, column] = runner.model.sample(rng, chunk)
        order = np.lexsort(
            (np.broadcast_to(tie_rank, times.shape), times), axis=1
        )
        labels = team_code[order]
        score_a, score_b = backend.score_batch(labels, fmt.scorers, fmt.displacement)
        pairs = np.stack([score_a, score_b], axis=1)
        uniq, counts = np.unique(pairs, axis=0, return_counts=True)
        for (a, b), c in zip(uniq.tolist(), counts.tolist()):
            weights[b - a] = weights.get(b - a, 0) + c
            joint[(a, b)] = joint.get((a, b), 0) + c
    meta = {
        "rng": "PCG64",
        "seed": seed,
        "samples": samples,
        "tie_break": "runner-id",
    }
    return ScoreDistribution(weights, COUNT, joint, meta)


@dataclass(frozen=True)
class TierSpec:
    """Strict speed tiers: tiers never interleave, and within a tier every
    ordering of its runners is equally likely."""

    tiers: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.tiers or any(len(t) == 0 for t in self.tiers):
            raise InputError("tiers must be nonempty")
        for tier in self.tiers:
            bad = set(tier) - set(TEAMS)
            if bad:
                raise InputError(f"tier labels must be 'A' or 'B', got {sorted(bad)}")

    @classmethod
    def from_strings(cls, groups: list[str]) -> "TierSpec":
        return cls(tuple(tuple(group) for group in groups))

    def label_count(self, team: str) -> int:
        return sum(tier.count(team) for tier in self.tiers)

    def partitions(self, fmt: MeetFormat) -> bool:
        return (
            self.label_count(TEAM_A) == fmt.roster_a
            and self.label_count(TEAM_B) == fmt.roster_b
        )


def tiered_distribution(fmt: MeetFormat, tiers: TierSpec) -> ScoreDistribution:
    """Exact margin distribution under a tier model.

    Tier ``k``'s runners occupy the next ``len(tier k)`` finish positions;
    each within-tier arrangement is equally likely, so outcomes are counted
    over the product of per-tier interleavings.
    """
    if not tiers.partitions(fmt):
        raise InputError("tiers must partition the two rosters")
    per_tier = []
    for tier in tiers.tiers:
        n_a = tier.count(TEAM_A)
        arrangements = [
            frozenset(combo) for combo in itertools.combinations(range(len(tier)), n_a)
        ]
        per_tier.append((len(tier), arrangements))
    rows = []
    for choice in itertools.product(*(arr for _, arr in per_tier)):
        row = []
        for (size, _), chosen in zip(per_tier, choice):
            row.extend(0 if k in chosen else 1 for k in range(size))
        rows.append(row)
    labels = np.array(rows, dtype=np.uint8)
    score_a, score_b = backend.score_batch(labels, fmt.scorers, fmt.displacement)
    weights: dict[int, int] = {}
    joint: dict[tuple[int, int], int] = {}
    for a, b in zip(score_a.tolist(), score_b.tolist()):
        weights[b - a] = weights.get(b - a, 0) + 1
        joint[(a, b)] = joint.get((a, b), 0) + 1
    return ScoreDistribution(weights, COUNT, joint)


def injury_distribution(
    m_full: int,
    m_injured: int,
    scorers: int,
    displacement: bool = True,
    cond: Condition | None = None,
) -> ScoreDistribution:
    """Margin distribution when team A lost a runner mid-season.

    Margins read from the short-handed team's perspective (team A fields
    ``m_injured`` runners against a full ``m_full`` roster).
    """
    if m_injured < scorers:
        raise InputError("the injured team must still field enough scorers")
    fmt = MeetFormat(m_injured, m_full, scorers, displacement)
    return iid_distribution(fmt, cond)
