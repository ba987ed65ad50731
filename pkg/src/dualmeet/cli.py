"""Command-line interface.

Subcommands compute a margin distribution (or its summary) and emit a CSV,
JSON, or markdown document; ``reproduce-paper`` regenerates the bundled
reference tables and reports a pass/fail manifest.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .distribution import ScoreDistribution
from .emit import (
    FORMATS,
    distribution_document,
    margin_matrix_document,
    summary_document,
    table_document,
)
from .errors import ConsistencyError, InputError
from .exact import Condition, iid_distribution
from .meet import MeetFormat
from .population import (
    finite_population_distribution,
    population_distribution,
    scenario_distribution_no_displacement,
)
from .racesim import TierSpec, injury_distribution, simulate_meet, tiered_distribution
from .reference import reproduce
from .rosterfile import load_roster
from .stats import quantile, summarize


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 for usage errors (2 is reserved)."""

    def error(self, message):  # noqa: A002 - argparse API
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=FORMATS, default="csv", help="output document format")
    sub.add_argument("--out", type=Path, default=None, help="write to this path instead of stdout")
    sub.add_argument("--precision", type=int, default=4, help="decimal places for probabilities")
    sub.add_argument("--summary", action="store_true", help="emit summary statistics instead of the distribution")
    sub.add_argument("--absolute", action="store_true", help="fold the distribution onto |margin| first")
    sub.add_argument("--symmetrize", action="store_true",
                     help="merge with the label-swapped mirror and fold onto |margin| "
                          "(turns a one-sided conditional into the unconditional law)")
    sub.add_argument("--quantiles", default="0.75,0.9",
                     help="comma-separated quantile levels for --summary")


def _add_format_args(sub: argparse.ArgumentParser, asymmetric: bool = True) -> None:
    sub.add_argument("--m", type=int, default=None, help="runners per team (symmetric)")
    if asymmetric:
        sub.add_argument("--m-a", type=int, default=None, help="team A roster size")
        sub.add_argument("--m-b", type=int, default=None, help="team B roster size")
    sub.add_argument("--n", type=int, required=True, help="scorers per team")
    sub.add_argument("--displacement", action=argparse.BooleanOptionalAction, default=True,
                     help="non-scoring finishers displace opposing scorers (default on)")


def _parse_format(args) -> MeetFormat:
    m_a = getattr(args, "m_a", None)
    m_b = getattr(args, "m_b", None)
    if args.m is not None:
        if m_a is not None or m_b is not None:
            raise InputError("give either --m or both --m-a/--m-b, not both")
        return MeetFormat.symmetric(args.m, args.n, args.displacement)
    if m_a is None or m_b is None:
        raise InputError("team sizes required: --m, or --m-a and --m-b")
    return MeetFormat(m_a, m_b, args.n, args.displacement)


def parse_condition(text: str | None) -> Condition:
    """Parse ``fastest:A``, ``top2:B``, or ``1:A,3:B`` position specs."""
    if not text:
        return Condition.none()
    fixed: dict[int, str] = {}
    for token in text.split(","):
        token = token.strip()
        key, sep, team = token.partition(":")
        team = team.strip().upper()
        if not sep or team not in ("A", "B"):
            raise InputError(f"bad condition token {token!r}; expected POSITION:TEAM")
        key = key.strip().lower()
        if key == "fastest":
            positions = [1]
        elif key == "top2":
            positions = [1, 2]
        else:
            try:
                positions = [int(key)]
            except ValueError:
                raise InputError(f"bad condition position {key!r}") from None
        for position in positions:
            if fixed.get(position, team) != team:
                raise InputError(f"condition assigns position {position} to both teams")
            fixed[position] = team
    return Condition(fixed)


def _parse_ratios(text: str) -> list[Fraction]:
    ratios = []
    for token in text.split(","):
        token = token.strip()
        try:
            ratios.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad ratio {token!r}; expected a decimal or p/q fraction") from None
    if not ratios:
        raise InputError("at least one ratio is required")
    for r in ratios:
        if not 0 <= r <= 1:
            raise InputError(f"ratio {r} outside [0, 1]")
    return ratios


def _parse_quantiles(text: str) -> tuple[float, ...]:
    try:
        levels = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise InputError(f"bad quantile list {text!r}") from None
    for q in levels:
        if not 0 < q < 1:
            raise InputError(f"quantile level {q} outside (0, 1)")
    return levels


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_distribution(args, dist: ScoreDistribution) -> None:
    if args.symmetrize:
        dist = dist.symmetrized()
    if args.absolute:
        dist = dist.absolute()
    if args.summary:
        summary = summarize(dist, _parse_quantiles(args.quantiles))
        _emit(args, summary_document(summary, args.format, args.precision))
    else:
        _emit(args, distribution_document(dist, args.format, args.precision))


def _cmd_iid(args) -> int:
    dist = iid_distribution(_parse_format(args), parse_condition(args.condition))
    _emit_distribution(args, dist)
    return 0


def _cmd_population(args) -> int:
    ratios = _parse_ratios(args.ratios)
    cond = parse_condition(args.condition)
    if args.m is None and not args.displacement and not cond.fixed:
        dists = [scenario_distribution_no_displacement(args.n, r) for r in ratios]
    else:
        if args.m is None:
            raise InputError("--m is required with displacement or a condition")
        fmt = MeetFormat.symmetric(args.m, args.n, args.displacement)
        dists = [population_distribution(fmt, r, cond) for r in ratios]
    labels = [str(r.numerator) if r.denominator == 1 else f"{float(r):g}" for r in ratios]

    if len(dists) == 1:
        _emit_distribution(args, dists[0])
        return 0
    if args.summary:
        header = ["statistic"] + [f"r={label}" for label in labels]
        rows: list[list] = []
        summaries = [(summarize(d), quantile(d, Fraction(9, 10))) for d in dists]
        for row in ("p_win", "p_tie", "mean_margin", "std_margin",
                    "mean_win_margin", "mean_loss_margin", "quantile90"):
            values: list = [row]
            for summary, q90 in summaries:
                if row == "quantile90":
                    values.append(q90)
                else:
                    value = getattr(summary, row)
                    values.append(float(value) if value is not None else None)
            rows.append(values)
        _emit(args, table_document(header, rows, args.format, args.precision))
    else:
        _emit(args, margin_matrix_document(labels, dists, args.format, args.precision))
    return 0


def _cmd_finite_population(args) -> int:
    dist = finite_population_distribution(args.pool_a, args.pool_b, _parse_format(args))
    _emit_distribution(args, dist)
    return 0


def _cmd_simulate(args) -> int:
    roster = load_roster(args.roster)
    dist = simulate_meet(_parse_format(args), roster, args.samples, args.seed)
    _emit_distribution(args, dist)
    return 0


def _cmd_tiers(args) -> int:
    groups = [tok.strip().upper() for tok in args.tiers.split(",") if tok.strip()]
    if not groups:
        raise InputError("--tiers must name at least one group")
    for group in groups:
        if set(group) - {"A", "B"}:
            raise InputError(f"tier group {group!r} may only contain A and B")
    dist = tiered_distribution(_parse_format(args), TierSpec.from_strings(groups))
    _emit_distribution(args, dist)
    return 0


def _cmd_injury(args) -> int:
    dist = injury_distribution(
        args.m_full, args.m_injured, args.n, args.displacement, parse_condition(args.condition)
    )
    _emit_distribution(args, dist)
    return 0


def _cmd_reproduce(args) -> int:
    manifest = reproduce(args.out)
    sys.stdout.write("\n".join(manifest.lines()) + "\n")
    return 0 if manifest.passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dualmeet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("iid",
                       help="exact distribution when every finish order is equally likely")
    _add_format_args(p)
    p.add_argument("--condition", default=None,
                   help="fix positions, e.g. 'fastest:A', 'top2:A', or '1:A,3:B'")
    _add_output_args(p)
    p.set_defaults(func=_cmd_iid)

    p = sub.add_parser("population",
                       help="large-population limit at one or more pool ratios")
    p.add_argument("--m", type=int, default=None, help="runners per team (needed with displacement)")
    p.add_argument("--n", type=int, required=True, help="scorers per team")
    p.add_argument("--displacement", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--ratios", required=True, help="comma-separated pool ratios, e.g. 0.5,0.55,2/3")
    p.add_argument("--condition", default=None, help="fix positions (requires --m)")
    _add_output_args(p)
    p.set_defaults(func=_cmd_population)

    p = sub.add_parser("finite-population",
                       help="exact pre-limit model with finite talent pools")
    p.add_argument("--pool-a", type=int, required=True, help="team A talent pool size")
    p.add_argument("--pool-b", type=int, required=True, help="team B talent pool size")
    _add_format_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_finite_population)

    p = sub.add_parser("simulate",
                       help="seeded Monte Carlo meet from a roster of time models")
    p.add_argument("--roster", required=True, help="roster JSON file")
    _add_format_args(p)
    p.add_argument("--samples", type=int, required=True, help="number of simulated races")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    _add_output_args(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("tiers",
                       help="exact distribution under strict speed tiers")
    p.add_argument("--tiers", required=True,
                   help="comma-separated tier groups over A/B, e.g. 'AABB,AB,AB'")
    _add_format_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_tiers)

    p = sub.add_parser("injury",
                       help="asymmetric meet where team A is short-handed")
    p.add_argument("--m-full", type=int, required=True, help="full roster size (team B)")
    p.add_argument("--m-injured", type=int, required=True, help="short-handed roster size (team A)")
    p.add_argument("--n", type=int, required=True, help="scorers per team")
    p.add_argument("--displacement", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--condition", default=None, help="fix positions")
    _add_output_args(p)
    p.set_defaults(func=_cmd_injury)

    p = sub.add_parser("reproduce-paper",
                       help="regenerate the bundled reference tables and verify them")
    p.add_argument("--out", type=Path, default=None,
                   help="also write the regenerated tables and manifest.json here")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConsistencyError) as exc:
        sys.stderr.write(f"dualmeet: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
