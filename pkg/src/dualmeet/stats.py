"""Distribution summaries: win/tie/loss split, moments, and quantiles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .distribution import ScoreDistribution
from .errors import InputError

Value = Fraction | float


@dataclass
class MeetSummary:
    """Reporting bundle for one margin distribution.

    Positive margin means team A won.  ``mean_win_margin`` and
    ``mean_loss_margin`` are conditional means and absent (``None``) when the
    conditioning event has probability zero; ``mean_loss_margin`` is signed
    (negative), callers print magnitudes where convention demands.
    """

    p_win: Value
    p_tie: Value
    p_loss: Value
    mean_margin: Value
    std_margin: float
    mean_win_margin: Value | None
    mean_loss_margin: Value | None
    median: Value
    quantiles: dict[float, Value] = field(default_factory=dict)

    def as_floats(self) -> dict[str, float | None]:
        out: dict[str, float | None] = {}
        for name in (
            "p_win",
            "p_tie",
            "p_loss",
            "mean_margin",
            "std_margin",
            "mean_win_margin",
            "mean_loss_margin",
            "median",
        ):
            value = getattr(self, name)
            out[name] = None if value is None else float(value)
        for q, value in self.quantiles.items():
            out[f"quantile_{q}"] = float(value)
        return out


def quantile(dist: ScoreDistribution, q) -> Value:
    """Smallest support value whose cumulative probability reaches ``q``.

    On an exact hit (cumulative mass equals ``q``, decidable in rational
    arithmetic) the midpoint of that value and the next support value is
    returned, so an even split across the middle of a distribution yields a
    half-integer median.
    """
    if not 0 < q < 1:
        raise InputError(f"quantile level must lie in (0, 1), got {q}")
    support = dist.support
    if not support:
        raise InputError("empty distribution has no quantiles")
    total = dist.total
    exact = dist.is_exact
    level = Fraction(q) if exact and isinstance(q, (Rational, float)) else float(q)
    cum = Fraction(0) if exact else 0.0
    for i, value in enumerate(support):
        cum += dist.weight(value)
        mass = Fraction(cum, total) if exact else cum / total
        if mass >= level:
            if mass == level and i + 1 < len(support):
                mid = Fraction(value + support[i + 1], 2)
                return mid if exact else float(mid)
            return value
    return support[-1]


def summarize(dist: ScoreDistribution, quantile_levels: tuple[float, ...] = (0.75, 0.9)) -> MeetSummary:
    """Full summary of a margin distribution (exact where the weights are)."""
    support = dist.support
    if not support:
        raise InputError("cannot summarize an empty distribution")
    total = dist.total
    exact = dist.is_exact

    def prob(mass):
        return Fraction(mass, total) if exact else mass / total

    win_mass = sum(dist.weight(d) for d in support if d > 0)
    tie_mass = dist.weight(0)
    loss_mass = sum(dist.weight(d) for d in support if d < 0)

    mean_num = sum(d * dist.weight(d) for d in support)
    sq_num = sum(d * d * dist.weight(d) for d in support)
    mean = prob(mean_num)
    second_moment = prob(sq_num)
    variance = second_moment - mean * mean
    std = math.sqrt(float(variance)) if variance > 0 else 0.0

    win_num = sum(d * dist.weight(d) for d in support if d > 0)
    loss_num = sum(d * dist.weight(d) for d in support if d < 0)
    mean_win = None if win_mass == 0 else (
        Fraction(win_num, win_mass) if exact else win_num / win_mass
    )
    mean_loss = None if loss_mass == 0 else (
        Fraction(loss_num, loss_mass) if exact else loss_num / loss_mass
    )

    return MeetSummary(
        p_win=prob(win_mass),
        p_tie=prob(tie_mass),
        p_loss=prob(loss_mass),
        mean_margin=mean,
        std_margin=std,
        mean_win_margin=mean_win,
        mean_loss_margin=mean_loss,
        median=quantile(dist, Fraction(1, 2) if exact else 0.5),
        quantiles={float(q): quantile(dist, q) for q in quantile_levels},
    )


@dataclass
class SummaryComparison:
    diffs: dict[str, float | None]
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def compare_summaries(
    a: MeetSummary,
    b: MeetSummary,
    tolerances: dict[str, float] | None = None,
    default_tolerance: float = 0.005,
) -> SummaryComparison:
    """Field-by-field absolute differences checked against per-field tolerances.

    A field is compared only when present in both summaries; a conditional
    mean present on one side but not the other is a failure outright.
    """
    tolerances = tolerances or {}
    fa, fb = a.as_floats(), b.as_floats()
    diffs: dict[str, float | None] = {}
    failures: list[str] = []
    for name in sorted(set(fa) | set(fb)):
        va, vb = fa.get(name), fb.get(name)
        if va is None and vb is None:
            diffs[name] = None
            continue
        if va is None or vb is None:
            diffs[name] = None
            failures.append(name)
            continue
        diff = abs(va - vb)
        diffs[name] = diff
        if diff > tolerances.get(name, default_tolerance):
            failures.append(name)
    return SummaryComparison(diffs, failures)
