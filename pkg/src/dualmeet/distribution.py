"""Weighted score-difference distributions.

Weights are either exact outcome counts (nonnegative integers), exact
rational probabilities (:class:`fractions.Fraction`), or floats for Monte
Carlo estimates.  Counts and rationals stay exact through every transform;
conversion to float happens only at the output boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping

from .errors import InputError

COUNT = "count"
PROBABILITY = "probability"

Weight = int | Fraction | float


def _is_exact(value: Weight) -> bool:
    return isinstance(value, Rational)


@dataclass
class ScoreDistribution:
    """Map from integer victory margin (``score_b - score_a``) to weight.

    ``joint``, when present, carries the underlying ``(score_a, score_b)``
    pair weights from which the margins were binned.  ``meta`` records
    provenance for stochastic sources (RNG name, seed, sample count).
    """

    weights: dict[int, Weight]
    kind: str = COUNT
    joint: dict[tuple[int, int], Weight] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in (COUNT, PROBABILITY):
            raise InputError(f"unknown weight kind {self.kind!r}")
        if any(w < 0 for w in self.weights.values()):
            raise InputError("weights must be nonnegative")

    # -- basic queries ----------------------------------------------------

    @property
    def total(self) -> Weight:
        return sum(self.weights.values())

    @property
    def support(self) -> list[int]:
        return sorted(d for d, w in self.weights.items() if w != 0)

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(w) for w in self.weights.values())

    def weight(self, margin: int) -> Weight:
        return self.weights.get(margin, 0)

    def probability(self, margin: int) -> Fraction | float:
        total = self.total
        if total == 0:
            raise InputError("empty distribution has no probabilities")
        w = self.weights.get(margin, 0)
        if _is_exact(w) and _is_exact(total):
            return Fraction(w) / Fraction(total)
        return w / total

    def probabilities(self) -> dict[int, Fraction | float]:
        return {d: self.probability(d) for d in self.support}

    # -- transforms --------------------------------------------------------

    def normalized(self) -> "ScoreDistribution":
        """Probability-kind copy; exact rationals when the weights are exact."""
        total = self.total
        if total == 0:
            raise InputError("cannot normalize an empty distribution")
        exact = self.is_exact and _is_exact(total)
        if exact:
            weights = {d: Fraction(w) / Fraction(total) for d, w in self.weights.items()}
            joint = (
                {k: Fraction(w) / Fraction(total) for k, w in self.joint.items()}
                if self.joint is not None
                else None
            )
        else:
            weights = {d: w / total for d, w in self.weights.items()}
            joint = (
                {k: w / total for k, w in self.joint.items()}
                if self.joint is not None
                else None
            )
        return ScoreDistribution(weights, PROBABILITY, joint, dict(self.meta))

    def mirror(self) -> "ScoreDistribution":
        """Swap the teams: negate margins, swap joint score pairs."""
        joint = (
            {(b, a): w for (a, b), w in self.joint.items()}
            if self.joint is not None
            else None
        )
        return ScoreDistribution(
            {-d: w for d, w in self.weights.items()}, self.kind, joint, dict(self.meta)
        )

    def absolute(self) -> "ScoreDistribution":
        """Fold onto nonnegative margins: ``w[k] + w[-k]`` for ``k > 0``."""
        folded: dict[int, Weight] = {}
        for d, w in self.weights.items():
            folded[abs(d)] = folded.get(abs(d), 0) + w
        return ScoreDistribution(folded, self.kind, None, dict(self.meta))

    def symmetrized(self) -> "ScoreDistribution":
        """Absolute-margin distribution of ``self`` merged with its mirror.

        Intended for one-sided conditionals (for example, "team A has the
        fastest runner") whose mirror image is the complementary half of the
        outcome space; the result is the unconditional ``|margin|`` law.
        Counts stay counts (over the doubled outcome space); probability
        weights renormalize to total mass 1.
        """
        merged = (self + self.mirror()).absolute()
        return merged.normalized() if self.kind == PROBABILITY else merged

    def __add__(self, other: "ScoreDistribution") -> "ScoreDistribution":
        if self.kind != other.kind:
            raise InputError("cannot merge distributions of different weight kinds")
        weights = dict(self.weights)
        for d, w in other.weights.items():
            weights[d] = weights.get(d, 0) + w
        joint = None
        if self.joint is not None and other.joint is not None:
            joint = dict(self.joint)
            for k, w in other.joint.items():
                joint[k] = joint.get(k, 0) + w
        return ScoreDistribution(weights, self.kind, joint)

    def shifted(self, offset: int) -> "ScoreDistribution":
        return ScoreDistribution(
            {d + offset: w for d, w in self.weights.items()}, self.kind, None, dict(self.meta)
        )

    # -- comparisons -------------------------------------------------------

    def same_law(self, other: "ScoreDistribution") -> bool:
        """True when both normalize to identical probability maps (exact)."""
        p, q = self.normalized().weights, other.normalized().weights
        support = set(p) | set(q)
        return all(p.get(d, 0) == q.get(d, 0) for d in support)

    def total_variation(self, other: "ScoreDistribution") -> float:
        p, q = self.normalized(), other.normalized()
        support = set(p.weights) | set(q.weights)
        return float(sum(abs(p.weight(d) - q.weight(d)) for d in support)) / 2.0

    def is_symmetric(self) -> bool:
        return all(self.weights.get(-d, 0) == w for d, w in self.weights.items())


def from_pairs(pairs: Mapping[tuple[int, int], Weight], kind: str = COUNT) -> ScoreDistribution:
    """Build a distribution from ``(score_a, score_b) -> weight`` pairs."""
    weights: dict[int, Weight] = {}
    for (a, b), w in pairs.items():
        weights[b - a] = weights.get(b - a, 0) + w
    return ScoreDistribution(weights, kind, dict(pairs))
