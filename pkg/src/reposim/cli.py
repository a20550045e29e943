"""Command-line entry point: extract corpora, compare them, or check the
bundled fixtures against their frozen expected aggregates.

Exit codes: 0 success (warnings allowed), 1 I/O or format failure, 2 when a
comparison plan names an artifact kind a corpus does not have.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .errors import CorpusFormatError, RepoSimError
from .ingest import ArtifactKind, RepoSnapshot, build_corpus, load_corpus, save_corpus
from .report import emit_csv, emit_json, render_table
from .similarity import (
    Aggregation,
    ComparisonPlan,
    FitScope,
    run_experiment,
)
from .version import __version__
from .vsm import VectorizerMode

REPRO_TOLERANCE = 1e-9

_KIND_BY_NAME = {k.value: k for k in ArtifactKind}


def _parse_pairs(text: str) -> list[tuple[ArtifactKind, ArtifactKind]]:
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 2 or parts[0] not in _KIND_BY_NAME or parts[1] not in _KIND_BY_NAME:
            raise argparse.ArgumentTypeError(
                f"bad pair {item!r}: expected kindA:kindB with kinds in "
                f"{sorted(_KIND_BY_NAME)}"
            )
        pairs.append((_KIND_BY_NAME[parts[0]], _KIND_BY_NAME[parts[1]]))
    if not pairs:
        raise argparse.ArgumentTypeError("no pairs given")
    return pairs


def _parse_agg(text: str) -> Aggregation:
    try:
        return Aggregation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_extensions(text: str) -> frozenset[str]:
    exts = frozenset(e.strip().lstrip(".").lower() for e in text.split(",") if e.strip())
    if not exts:
        raise argparse.ArgumentTypeError("no extensions given")
    return exts


def cmd_extract(args) -> int:
    snapshot = RepoSnapshot(
        repo_name=args.name or Path(args.repo_path).resolve().name,
        root=Path(args.repo_path),
        commit_log_path=Path(args.commit_log) if args.commit_log else None,
        source_extensions=args.extensions,
    )
    try:
        corpora, warnings = build_corpus(snapshot)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    out = Path(args.out) if args.out else Path(f"{snapshot.repo_name}.corpus.jsonl")
    out.write_bytes(save_corpus(corpora))
    for kind in sorted(corpora, key=lambda k: k.value):
        print(f"{kind.value}: {len(corpora[kind].documents)} document(s)")
    print(f"wrote {out}")
    return 0


def _load_corpus_file(path: str):
    try:
        return load_corpus(Path(path).read_bytes())
    except OSError as exc:
        print(f"error: cannot read corpus {path}: {exc}", file=sys.stderr)
        return None
    except CorpusFormatError as exc:
        print(f"error: bad corpus {path}: {exc}", file=sys.stderr)
        return None


def cmd_compare(args) -> int:
    corpora_a = _load_corpus_file(args.a)
    corpora_b = _load_corpus_file(args.b)
    if corpora_a is None or corpora_b is None:
        return 1
    if not corpora_a or not corpora_b:
        empty = args.a if not corpora_a else args.b
        print(f"error: corpus {empty} holds no artifacts", file=sys.stderr)
        return 2

    modes = {
        "tfidf": (VectorizerMode.TFIDF,),
        "count": (VectorizerMode.COUNT,),
        "both": (VectorizerMode.TFIDF, VectorizerMode.COUNT),
    }[args.vectorizer]
    fit_scope = FitScope(args.fit)
    plans = [
        ComparisonPlan(kind_a, kind_b, mode, fit_scope, args.agg)
        for mode in modes
        for kind_a, kind_b in args.pairs
    ]

    requested = len(plans)
    try:
        report = run_experiment(
            corpora_a, corpora_b, plans, skip_missing=args.skip_missing
        )
    except RepoSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if len(report.rows) < requested:
        print(
            f"warning: skipped {requested - len(report.rows)} plan(s) due to missing artifacts",
            file=sys.stderr,
        )

    if args.format == "table":
        payload = render_table(report).encode("utf-8")
    elif args.format == "json":
        payload = emit_json(report)
    else:
        payload = emit_csv(report)

    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def _default_fixtures_dir() -> Path:
    return Path(str(resources.files("reposim").joinpath("fixtures")))


def cmd_repro(args) -> int:
    fixtures = Path(args.fixtures) if args.fixtures else _default_fixtures_dir()
    expected_path = fixtures / "expected.json"
    if not expected_path.is_file():
        print(f"error: expected-values file not found: {expected_path}", file=sys.stderr)
        return 1
    try:
        expected = json.loads(expected_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {expected_path}: {exc}", file=sys.stderr)
        return 1

    expected_rows = {
        (
            row["repo_a"],
            row["repo_b"],
            row["vectorizer"],
            row["kind_a"],
            row["kind_b"],
        ): row["aggregate"]
        for row in expected.get("rows", [])
    }

    computed = {}
    for comparison in expected.get("comparisons", []):
        path_a = fixtures / comparison["corpus_a"]
        path_b = fixtures / comparison["corpus_b"]
        for path in (path_a, path_b):
            if not path.is_file():
                print(f"error: fixture corpus not found: {path}", file=sys.stderr)
                return 1
        report = run_experiment(load_corpus(path_a.read_bytes()), load_corpus(path_b.read_bytes()))
        for row in report.rows:
            key = (row.repo_a, row.repo_b, row.vectorizer.value, row.kind_a.value, row.kind_b.value)
            computed[key] = row.aggregate

    failures = 0
    for key in sorted(expected_rows):
        want = expected_rows[key]
        got = computed.get(key)
        label = f"{key[0]} vs {key[1]}  {key[2]:<6} {key[3]}:{key[4]}"
        if got is None:
            print(f"FAIL  {label}  missing row (expected {want:.9f})")
            failures += 1
        elif abs(got - want) > REPRO_TOLERANCE:
            print(f"FAIL  {label}  expected {want:.9f} got {got:.9f}")
            failures += 1
        else:
            print(f"PASS  {label}  {got:.9f}")
    for key in sorted(set(computed) - set(expected_rows)):
        print(f"FAIL  unexpected row {key}")
        failures += 1

    if failures:
        print(f"{failures} row(s) out of tolerance {REPRO_TOLERANCE}", file=sys.stderr)
        return 1
    print(f"all {len(expected_rows)} rows within {REPRO_TOLERANCE}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reposim",
        description="Measure textual similarity between repositories across artifact kinds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract a corpus file from a repository snapshot")
    p_extract.add_argument("repo_path", help="repository working tree root")
    p_extract.add_argument("--name", help="repository name (default: directory name)")
    p_extract.add_argument(
        "--commit-log",
        help="exported commit log; produce with: git log --pretty=format:\"commit %%H%%n%%B%%x1e\"",
    )
    p_extract.add_argument(
        "--extensions",
        type=_parse_extensions,
        default=frozenset({"java", "xml"}),
        help="comma-separated source extensions (default: java,xml)",
    )
    p_extract.add_argument("--out", help="output corpus path (default: <name>.corpus.jsonl)")
    p_extract.set_defaults(func=cmd_extract)

    p_compare = sub.add_parser("compare", help="compare two corpus files")
    p_compare.add_argument("--a", required=True, help="corpus file for repository A")
    p_compare.add_argument("--b", required=True, help="corpus file for repository B")
    p_compare.add_argument(
        "--pairs",
        type=_parse_pairs,
        default=_parse_pairs("source:source,commits:commits,commits:source,readme:source"),
        help="comma-separated kindA:kindB pairs (kinds: readme, commits, source)",
    )
    p_compare.add_argument(
        "--vectorizer", choices=("tfidf", "count", "both"), default="both"
    )
    p_compare.add_argument("--fit", choices=("pairwise", "corpus"), default="pairwise")
    p_compare.add_argument("--agg", type=_parse_agg, default=Aggregation.max())
    p_compare.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_compare.add_argument("--out", help="write the report here instead of stdout")
    p_compare.add_argument(
        "--skip-missing",
        action="store_true",
        help="drop plans whose artifact kind a corpus lacks instead of failing",
    )
    p_compare.set_defaults(func=cmd_compare)

    p_repro = sub.add_parser(
        "repro", help="run the default experiment on bundled fixtures and check expected values"
    )
    p_repro.add_argument("--fixtures", help="fixtures directory (default: bundled)")
    p_repro.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
