"""Document emission: distributions, summaries, and sweep tables.

All output is byte-stable for identical inputs: margins ascend, column
order is the caller's, floats are rounded half-even to a fixed number of
decimal places at the output boundary only.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from numbers import Rational

from .distribution import COUNT, PROBABILITY, ScoreDistribution
from .errors import InputError
from .stats import MeetSummary

FORMATS = ("csv", "json", "md")

_SUMMARY_FIELDS = (
    "p_win",
    "p_tie",
    "p_loss",
    "mean_margin",
    "std_margin",
    "mean_win_margin",
    "mean_loss_margin",
    "median",
)


def round_half_even(value, places: int) -> Decimal:
    """Round to ``places`` decimals, ties to even; exact for rationals."""
    if isinstance(value, Rational):
        scaled = Fraction(value) * 10**places
        floor = scaled.numerator // scaled.denominator
        remainder = scaled - floor
        if remainder > Fraction(1, 2) or (remainder == Fraction(1, 2) and floor % 2):
            floor += 1
        return Decimal(floor).scaleb(-places)
    return Decimal(repr(float(value))).quantize(
        Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN
    )


def format_value(value, places: int) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{round_half_even(value, places):f}"


def _weight_to_json(weight):
    if isinstance(weight, int):
        return weight
    if isinstance(weight, Fraction):
        return f"{weight.numerator}/{weight.denominator}"
    return float(weight)


def _weight_from_json(raw):
    if isinstance(raw, str):
        num, _, den = raw.partition("/")
        return Fraction(int(num), int(den or "1"))
    if isinstance(raw, int):
        return raw
    return float(raw)


def distribution_document(
    dist: ScoreDistribution, format: str = "csv", precision: int = 4
) -> str:
    """Serialize one margin distribution."""
    if format not in FORMATS:
        raise InputError(f"unknown output format {format!r}; expected one of {FORMATS}")
    margins = dist.support
    total = dist.total
    counts = [dist.weight(d) for d in margins] if dist.kind == COUNT else None
    probs = [dist.probability(d) for d in margins] if margins else []

    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["margin", "count", "probability"])
        for k, d in enumerate(margins):
            count = counts[k] if counts is not None else ""
            writer.writerow([d, count, format_value(probs[k], precision)])
        return buffer.getvalue()

    if format == "json":
        doc = {
            "type": "distribution",
            "kind": dist.kind,
            "total": _weight_to_json(total),
            "margins": margins,
            "weights": [_weight_to_json(dist.weight(d)) for d in margins],
            "probabilities": [float(round_half_even(p, precision)) for p in probs],
            "joint": (
                sorted([a, b, _weight_to_json(w)] for (a, b), w in dist.joint.items())
                if dist.joint is not None
                else None
            ),
            "meta": dist.meta,
        }
        return json.dumps(doc, indent=2) + "\n"

    lines = []
    band = 10
    for start in range(0, len(margins), band):
        chunk = margins[start : start + band]
        lines.append("| margin | " + " | ".join(str(d) for d in chunk) + " |")
        lines.append("| --- |" + " --- |" * len(chunk))
        if counts is not None:
            lines.append(
                "| counts | " + " | ".join(str(counts[start + k]) for k in range(len(chunk))) + " |"
            )
        lines.append(
            "| prob | "
            + " | ".join(format_value(probs[start + k], precision) for k in range(len(chunk)))
            + " |"
        )
        lines.append("")
    return "\n".join(lines)


def parse_distribution(text: str) -> ScoreDistribution:
    """Inverse of the JSON distribution document (weights stay exact)."""
    doc = json.loads(text)
    if doc.get("type") != "distribution":
        raise InputError("document is not a distribution")
    weights = {
        int(d): _weight_from_json(w) for d, w in zip(doc["margins"], doc["weights"])
    }
    joint = None
    if doc.get("joint") is not None:
        joint = {(int(a), int(b)): _weight_from_json(w) for a, b, w in doc["joint"]}
    return ScoreDistribution(weights, doc["kind"], joint, doc.get("meta") or {})


def summary_document(summary: MeetSummary, format: str = "csv", precision: int = 4) -> str:
    """Serialize a summary as ``statistic,value`` rows (or JSON/markdown)."""
    if format not in FORMATS:
        raise InputError(f"unknown output format {format!r}; expected one of {FORMATS}")
    rows = [(name, getattr(summary, name)) for name in _SUMMARY_FIELDS]
    rows += [(f"quantile_{q:g}", v) for q, v in sorted(summary.quantiles.items())]

    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["statistic", "value"])
        for name, value in rows:
            writer.writerow([name, format_value(value, precision)])
        return buffer.getvalue()

    if format == "json":
        doc = {"type": "summary"}
        for name, value in rows:
            doc[name] = None if value is None else float(value)
        return json.dumps(doc, indent=2) + "\n"

    lines = ["| statistic | value |", "| --- | --- |"]
    lines += [f"| {name} | {format_value(value, precision)} |" for name, value in rows]
    lines.append("")
    return "\n".join(lines)


def table_document(
    header: list[str], rows: list[list], format: str = "csv", precision: int = 4
) -> str:
    """Generic labeled table (first column is the row label)."""
    if format not in FORMATS:
        raise InputError(f"unknown output format {format!r}; expected one of {FORMATS}")

    def cell(value):
        return value if isinstance(value, str) else format_value(value, precision)

    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell(v) for v in row])
        return buffer.getvalue()

    if format == "json":
        doc = {
            "type": "table",
            "header": header,
            "rows": [[cell(v) for v in row] for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"

    lines = ["| " + " | ".join(header) + " |", "| --- |" + " --- |" * (len(header) - 1)]
    lines += ["| " + " | ".join(cell(v) for v in row) + " |" for row in rows]
    lines.append("")
    return "\n".join(lines)


def margin_matrix_document(
    ratio_labels: list[str],
    dists: list[ScoreDistribution],
    format: str = "csv",
    precision: int = 4,
) -> str:
    """Margins down the rows, one probability column per ratio."""
    margins = sorted({d for dist in dists for d in dist.support})
    header = ["margin"] + [f"r={label}" for label in ratio_labels]
    rows = []
    for d in margins:
        rows.append([str(d)] + [dist.probability(d) if d in dist.weights else 0 for dist in dists])
    return table_document(header, rows, format, precision)
