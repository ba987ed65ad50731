"""Regression harness against the bundled reference tables.

The ``refdata`` fixtures are transcriptions of the published score tables
this engine reproduces.  ``reproduce`` recomputes every table, compares
counts exactly and probabilities after 4-decimal rounding, checks the
summary-statistic tables to ±0.005 (0.9-quantile rows exactly), and also
re-derives the prose statistics quoted around the tables, including one
figure that is documented as inconsistent with its own table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .distribution import ScoreDistribution
from .emit import distribution_document, margin_matrix_document, round_half_even, table_document
from .exact import Condition, iid_distribution
from .meet import MeetFormat
from .population import population_distribution, scenario_distribution_no_displacement
from .stats import quantile, summarize

PRECISION = 4
STAT_TOLERANCE = 0.005
_ULP = Decimal(1).scaleb(-PRECISION)

_STAT_ROWS = (
    "p_win",
    "mean_margin",
    "std_margin",
    "mean_win_margin",
    "mean_loss_margin",
    "quantile90",
)


def _fixture_names() -> list[str]:
    root = resources.files("dualmeet") / "refdata"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    text = (resources.files("dualmeet") / "refdata" / f"{name}.json").read_text("utf-8")
    return json.loads(text)


@dataclass
class TableResult:
    table: str
    cells: int
    failures: list[str] = field(default_factory=list)
    rounding_notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        return "pass-with-rounding-notes" if self.rounding_notes else "pass"

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class ProseResult:
    label: str
    quoted: float
    computed: float
    status: str  # pass | fail | known-inconsistent

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class Manifest:
    tables: list[TableResult]
    prose: list[ProseResult]

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.tables) and all(p.passed for p in self.prose)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tables": [
                {
                    "table": t.table,
                    "status": t.status,
                    "cells": t.cells,
                    "failures": t.failures,
                    "rounding_notes": t.rounding_notes,
                }
                for t in self.tables
            ],
            "prose": [
                {
                    "label": p.label,
                    "quoted": p.quoted,
                    "computed": p.computed,
                    "status": p.status,
                }
                for p in self.prose
            ],
        }

    def lines(self) -> list[str]:
        out = []
        for t in self.tables:
            note = f" ({len(t.rounding_notes)} rounding notes)" if t.rounding_notes else ""
            out.append(f"{t.status.upper():>8}  table {t.table}  [{t.cells} cells]{note}")
            out.extend(f"          {f}" for f in t.failures)
        for p in self.prose:
            out.append(
                f"{p.status.upper():>8}  prose {p.label}: quoted {p.quoted}, computed {p.computed:.4f}"
            )
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return out


def _prob_cell(result: TableResult, where: str, exact_value, fixture_text: str) -> None:
    result.cells += 1
    computed = round_half_even(exact_value, PRECISION)
    quoted = Decimal(fixture_text)
    if computed == quoted:
        return
    if abs(computed - quoted) <= _ULP:
        result.rounding_notes.append(
            f"{where}: computed {computed} vs quoted {quoted} (paper-rounding)"
        )
    else:
        result.failures.append(f"{where}: computed {computed} vs quoted {quoted}")


def _fixture_format(fx: dict) -> MeetFormat:
    return MeetFormat.symmetric(fx["m"], fx["n"], fx["displacement"])


def _fixture_condition(fx: dict) -> Condition:
    return Condition({int(k): v for k, v in fx["condition"].items()})


def check_iid_table(fx: dict) -> tuple[TableResult, ScoreDistribution]:
    dist = iid_distribution(_fixture_format(fx), _fixture_condition(fx))
    result = TableResult(fx["table"], 0)
    if dist.support != fx["margins"]:
        result.failures.append(
            f"margin support differs: computed {dist.support} vs quoted {fx['margins']}"
        )
        return result, dist
    for margin, count, prob in zip(fx["margins"], fx["counts"], fx["probs"]):
        result.cells += 1
        if dist.weight(margin) != count:
            result.failures.append(
                f"count[{margin}]: computed {dist.weight(margin)} vs quoted {count}"
            )
        _prob_cell(result, f"prob[{margin}]", dist.probability(margin), prob)
    return result, dist


def _population_dist(fx: dict, ratio: Fraction) -> ScoreDistribution:
    if fx["m"] is None:
        return scenario_distribution_no_displacement(fx["n"], ratio)
    return population_distribution(_fixture_format(fx), ratio)


def check_population_table(fx: dict) -> TableResult:
    result = TableResult(fx["table"], 0)
    for column, ratio_text in enumerate(fx["ratios"]):
        dist = _population_dist(fx, Fraction(ratio_text))
        for row, margin in enumerate(fx["margins"]):
            _prob_cell(
                result,
                f"prob[{margin}, r={ratio_text}]",
                dist.weight(margin),
                fx["probs"][row][column],
            )
    return result


def check_stats_table(fx: dict) -> TableResult:
    result = TableResult(fx["table"], 0)
    for column, ratio_text in enumerate(fx["ratios"]):
        dist = _population_dist(fx, Fraction(ratio_text))
        summary = summarize(dist)
        computed = {
            "p_win": float(summary.p_win),
            "mean_margin": float(summary.mean_margin),
            "std_margin": summary.std_margin,
            "mean_win_margin": float(summary.mean_win_margin),
            "mean_loss_margin": float(summary.mean_loss_margin),
            "quantile90": float(quantile(dist, Fraction(9, 10))),
        }
        for row in _STAT_ROWS:
            result.cells += 1
            quoted = float(fx["rows"][row][column])
            value = computed[row]
            where = f"{row}[r={ratio_text}]"
            if row == "quantile90":
                if value != quoted:
                    result.failures.append(f"{where}: computed {value} vs quoted {quoted}")
            elif abs(value - quoted) > STAT_TOLERANCE:
                result.failures.append(
                    f"{where}: computed {value:.4f} vs quoted {quoted} (tol {STAT_TOLERANCE})"
                )
    return result


def _prose_checks() -> list[ProseResult]:
    """Re-derive the statistics quoted in prose next to each table."""
    checks: list[ProseResult] = []

    def close(label, quoted, computed, tolerance=STAT_TOLERANCE):
        computed = float(computed)
        checks.append(
            ProseResult(label, quoted, computed, "pass" if abs(computed - quoted) <= tolerance else "fail")
        )

    def exact(label, quoted, computed):
        computed = float(computed)
        checks.append(ProseResult(label, quoted, computed, "pass" if computed == quoted else "fail"))

    def inconsistent(label, quoted, computed, tolerance=STAT_TOLERANCE):
        # A quoted figure that contradicts its own table; the check passes
        # when the engine's exact value confirms the contradiction.
        computed = float(computed)
        status = "known-inconsistent" if abs(computed - quoted) > tolerance else "fail"
        checks.append(ProseResult(label, quoted, computed, status))

    fastest = Condition.fastest()

    dist = iid_distribution(MeetFormat.symmetric(6, 4, False), fastest)
    s = summarize(dist)
    close("m6n4-nodisp-first1 p_win", 0.6948, s.p_win)
    close("m6n4-nodisp-first1 p_tie", 0.0974, s.p_tie)
    close("m6n4-nodisp-first1 p_loss", 0.20779, s.p_loss)
    close("m6n4-nodisp-first1 mean_win", 8.11215, s.mean_win_margin)
    close("m6n4-nodisp-first1 mean_loss", 4.45833, -s.mean_loss_margin)
    sym = summarize(dist.symmetrized())
    close("m6n4-nodisp mean |margin|", 6.56277, sym.mean_margin)
    close("m6n4-nodisp std |margin|", 4.52355, sym.std_margin)
    exact("m6n4-nodisp median", 6, sym.median)
    exact("m6n4-nodisp quantile(.75)", 10, sym.quantiles[0.75])
    exact("m6n4-nodisp quantile(.9)", 14, sym.quantiles[0.9])

    dist = iid_distribution(MeetFormat.symmetric(6, 4, True), fastest)
    s = summarize(dist)
    close("m6n4-disp-first1 p_win", 0.6991, s.p_win)
    close("m6n4-disp-first1 p_tie", 0.0584, s.p_tie)
    close("m6n4-disp-first1 mean_win", 9.08, s.mean_win_margin)
    close("m6n4-disp-first1 mean_loss", 4.973, -s.mean_loss_margin)
    inconsistent("m6n4-disp-first1 p_loss", 0.30, s.p_loss)
    sym = summarize(dist.symmetrized())
    close("m6n4-disp mean |margin|", 7.554, sym.mean_margin)
    close("m6n4-disp std |margin|", 5.334, sym.std_margin)
    exact("m6n4-disp median", 6.5, sym.median)
    exact("m6n4-disp quantile(.75)", 11, sym.quantiles[0.75])
    exact("m6n4-disp quantile(.9)", 15, sym.quantiles[0.9])

    dist = iid_distribution(MeetFormat.symmetric(6, 4, False), Condition.top_two())
    s = summarize(dist)
    close("m6n4-nodisp-first2 p_tie", 0.0714, s.p_tie)
    close("m6n4-nodisp-first2 mean", 9.162, s.mean_margin)
    close("m6n4-nodisp-first2 std", 4.711, s.std_margin)
    exact("m6n4-nodisp-first2 median", 10, s.median)

    dist = iid_distribution(MeetFormat.symmetric(7, 5, False), fastest)
    s = summarize(dist)
    close("m7n5-nodisp-first1 p_win", 0.7214, s.p_win)
    close("m7n5-nodisp-first1 p_loss", 0.2786, s.p_loss)
    close("m7n5-nodisp-first1 mean_win", 10.37, s.mean_win_margin)
    close("m7n5-nodisp-first1 mean_loss", 5.837, -s.mean_loss_margin)
    exact("m7n5-nodisp-first1 p_tie", 0.0, s.p_tie)
    sym = summarize(dist.symmetrized())
    close("m7n5-nodisp mean |margin|", 9.108, sym.mean_margin)
    close("m7n5-nodisp std |margin|", 6.283, sym.std_margin)
    exact("m7n5-nodisp median", 9, sym.median)
    exact("m7n5-nodisp quantile(.9)", 19, sym.quantiles[0.9])

    dist = iid_distribution(MeetFormat.symmetric(7, 5, True), fastest)
    s = summarize(dist)
    close("m7n5-disp-first1 p_win", 0.7022, s.p_win)
    close("m7n5-disp-first1 p_loss", 0.2815, s.p_loss)
    close("m7n5-disp-first1 mean_win", 11.66, s.mean_win_margin)
    close("m7n5-disp-first1 mean_loss", 6.882, -s.mean_loss_margin)
    sym = summarize(dist.symmetrized())
    close("m7n5-disp mean |margin|", 10.12, sym.mean_margin)
    # The quoted 7.100 contradicts the quoted table itself: its exact counts
    # (all reproduced above) force a standard deviation of 7.1992.
    inconsistent("m7n5-disp std |margin|", 7.100, sym.std_margin)
    exact("m7n5-disp median", 9, sym.median)
    exact("m7n5-disp quantile(.75)", 15, sym.quantiles[0.75])
    exact("m7n5-disp quantile(.9)", 21, sym.quantiles[0.9])

    dist = iid_distribution(MeetFormat.symmetric(7, 5, True), Condition.top_two())
    s = summarize(dist)
    close("m7n5-disp-first2 p_win", 0.904, s.p_win)
    close("m7n5-disp-first2 p_tie", 0.009, s.p_tie)
    close("m7n5-disp-first2 p_loss", 0.0871, s.p_loss)
    close("m7n5-disp-first2 mean_win", 14.06, s.mean_win_margin)
    close("m7n5-disp-first2 mean_loss", 3.90, -s.mean_loss_margin)

    return checks


def _table_csv(fx: dict) -> str:
    """Regenerated document for one fixture, as CSV."""
    if fx["kind"] == "iid":
        dist = iid_distribution(_fixture_format(fx), _fixture_condition(fx))
        return distribution_document(dist, "csv", PRECISION)
    if fx["kind"] == "population":
        dists = [_population_dist(fx, Fraction(r)) for r in fx["ratios"]]
        return margin_matrix_document(fx["ratios"], dists, "csv", PRECISION)
    header = ["statistic"] + [f"r={r}" for r in fx["ratios"]]
    rows = []
    summaries = []
    for ratio_text in fx["ratios"]:
        dist = _population_dist(fx, Fraction(ratio_text))
        summaries.append((summarize(dist), quantile(dist, Fraction(9, 10))))
    for row in _STAT_ROWS:
        values: list = [row]
        for summary, q90 in summaries:
            if row == "quantile90":
                values.append(q90)
            elif row == "std_margin":
                values.append(summary.std_margin)
            else:
                values.append(float(getattr(summary, row)))
        rows.append(values)
    return table_document(header, rows, "csv", 2)


def reproduce(outdir: str | Path | None = None) -> Manifest:
    """Recompute every reference table; optionally write documents + manifest."""
    tables: list[TableResult] = []
    for name in _fixture_names():
        fx = load_fixture(name)
        if fx["kind"] == "iid":
            result, _ = check_iid_table(fx)
        elif fx["kind"] == "population":
            result = check_population_table(fx)
        else:
            result = check_stats_table(fx)
        tables.append(result)
    manifest = Manifest(tables, _prose_checks())

    if outdir is not None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        for name in _fixture_names():
            (outdir / f"{name}.csv").write_text(_table_csv(load_fixture(name)), encoding="utf-8")
        (outdir / "manifest.json").write_text(
            json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
    return manifest
