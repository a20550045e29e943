"""Rendering of experiment results: fixed-width text table, JSON and CSV.

All emitters are pure functions of the report value, so identical reports
always serialize to identical bytes. The JSON form round-trips losslessly
through parse_json.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Mapping

from .errors import CorpusFormatError
from .ingest import ArtifactKind
from .vsm import VectorizerMode

REPORT_FORMAT_VERSION = 1

CSV_HEADER = ("repo_a", "repo_b", "vectorizer", "kind_a", "kind_b", "aggregate", "rows", "cols", "zero_pairs")

_VEC_RANK = {mode: i for i, mode in enumerate(VectorizerMode)}
_KIND_RANK = {kind: i for i, kind in enumerate(ArtifactKind)}


@dataclass(frozen=True)
class ReportRow:
    """One aggregate score for one (repo pair, vectorizer, artifact pair)."""

    repo_a: str
    repo_b: str
    vectorizer: VectorizerMode
    kind_a: ArtifactKind
    kind_b: ArtifactKind
    aggregate: float
    rows: int
    cols: int
    zero_pairs: int

    @property
    def matrix_shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_cross_artifact(self) -> bool:
        return self.kind_a is not self.kind_b


@dataclass(frozen=True)
class SimilarityReport:
    rows: tuple[ReportRow, ...]
    metadata: Mapping[str, str | None]


def row_order_key(row: ReportRow):
    """Canonical row order: repo pair, vectorizer, then artifact pair with
    same-kind comparisons before cross-kind ones (source first, readme last)."""
    return (
        row.repo_a,
        row.repo_b,
        _VEC_RANK[row.vectorizer],
        row.is_cross_artifact,
        -_KIND_RANK[row.kind_a],
        -_KIND_RANK[row.kind_b],
    )


def render_table(report: SimilarityReport) -> str:
    """Human-facing fixed-width table, grouped by repo pair then vectorizer.

    Cross-artifact rows carry a ``*`` marker; scores show three decimals.
    """
    meta = report.metadata
    title = (
        f"fit={meta.get('fit_scope')}  agg={meta.get('aggregation')}"
        f"  config={meta.get('config_digest')}  tool={meta.get('tool_version')}"
    )
    lines = [title, "=" * 72]
    group = None
    for row in report.rows:
        key = (row.repo_a, row.repo_b, row.vectorizer)
        if key != group:
            lines.append(f"{row.repo_a} vs {row.repo_b} [{row.vectorizer.value}]")
            group = key
        pair = f"{row.kind_a.value} vs {row.kind_b.value}"
        mark = "*" if row.is_cross_artifact else " "
        shape = f"{row.rows}x{row.cols}"
        lines.append(f"  {pair:<24}{mark}  {shape:>9}  zeros={row.zero_pairs:<6}  {row.aggregate:.3f}")
    return "\n".join(lines) + "\n"


def _row_to_obj(row: ReportRow) -> dict:
    return {
        "repo_a": row.repo_a,
        "repo_b": row.repo_b,
        "vectorizer": row.vectorizer.value,
        "kind_a": row.kind_a.value,
        "kind_b": row.kind_b.value,
        "aggregate": row.aggregate,
        "rows": row.rows,
        "cols": row.cols,
        "zero_pairs": row.zero_pairs,
    }


_METADATA_KEYS = ("config_digest", "fit_scope", "aggregation", "tool_version", "timestamp")


def emit_json(report: SimilarityReport) -> bytes:
    """Serialize with full float precision and a fixed key order."""
    doc = {
        "format_version": REPORT_FORMAT_VERSION,
        "metadata": {k: report.metadata.get(k) for k in _METADATA_KEYS},
        "rows": [_row_to_obj(r) for r in report.rows],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def emit_csv(report: SimilarityReport) -> bytes:
    """Serialize rows only; aggregates are printed with six decimals."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(
            [
                row.repo_a,
                row.repo_b,
                row.vectorizer.value,
                row.kind_a.value,
                row.kind_b.value,
                f"{row.aggregate:.6f}",
                row.rows,
                row.cols,
                row.zero_pairs,
            ]
        )
    return buf.getvalue().encode("utf-8")


_MODE_BY_VALUE = {m.value: m for m in VectorizerMode}
_KIND_BY_VALUE = {k.value: k for k in ArtifactKind}


def parse_json(data: bytes) -> SimilarityReport:
    """Inverse of emit_json; raises CorpusFormatError on malformed input."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorpusFormatError(f"invalid report JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format_version") != REPORT_FORMAT_VERSION:
        raise CorpusFormatError("missing or unsupported report format_version")
    try:
        metadata = {k: doc["metadata"].get(k) for k in _METADATA_KEYS}
        rows = tuple(
            ReportRow(
                repo_a=obj["repo_a"],
                repo_b=obj["repo_b"],
                vectorizer=_MODE_BY_VALUE[obj["vectorizer"]],
                kind_a=_KIND_BY_VALUE[obj["kind_a"]],
                kind_b=_KIND_BY_VALUE[obj["kind_b"]],
                aggregate=float(obj["aggregate"]),
                rows=int(obj["rows"]),
                cols=int(obj["cols"]),
                zero_pairs=int(obj["zero_pairs"]),
            )
            for obj in doc["rows"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusFormatError(f"invalid report JSON structure: {exc}") from exc
    return SimilarityReport(rows=rows, metadata=metadata)
