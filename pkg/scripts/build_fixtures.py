#!/usr/bin/env python3
"""Regenerate the packaged fixture corpora and their expected aggregates.

Extracts the three mini repositories under tests/fixtures/repos, writes
their corpus files into src/reposim/fixtures, computes the expected
aggregate for every default-experiment row with the dense oracle from
tests/oracle.py, and refuses to freeze values that violate the orderings
the fixture suite asserts (same-kind above cross-kind, related pair above
unrelated pair, count at or above tf-idf).

Run from the repository root: python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from oracle import oracle_aggregate, oracle_matrix  # noqa: E402

from reposim import (  # noqa: E402
    ArtifactKind,
    PipelineConfig,
    RepoSnapshot,
    build_corpus,
    preprocess,
    run_experiment,
    save_corpus,
)

REPO_NAMES = ("echoplayer", "tunedroid", "litebrowse")
COMPARISONS = (("echoplayer", "tunedroid"), ("echoplayer", "litebrowse"))

PAIR_ORDER = (
    ("source", "source"),
    ("commits", "commits"),
    ("commits", "source"),
    ("readme", "source"),
)


def extract_all() -> dict[str, dict[ArtifactKind, object]]:
    corpora = {}
    for name in REPO_NAMES:
        root = ROOT / "tests" / "fixtures" / "repos" / name
        snapshot = RepoSnapshot(
            repo_name=name, root=root, commit_log_path=root / "commits.log"
        )
        built, warnings = build_corpus(snapshot)
        if warnings:
            raise SystemExit(f"{name}: unexpected extraction warnings: {warnings}")
        if len(built) != 3:
            raise SystemExit(f"{name}: expected all three artifact kinds, got {sorted(built)}")
        corpora[name] = built
    return corpora


def expected_rows(corpora) -> list[dict]:
    cfg = PipelineConfig()
    rows = []
    for name_a, name_b in COMPARISONS:
        tokens = {
            (name, kind.value): [
                preprocess(doc, cfg).tokens for doc in corpora[name][kind].documents
            ]
            for name in (name_a, name_b)
            for kind in ArtifactKind
        }
        for mode in ("tfidf", "count"):
            for kind_a, kind_b in PAIR_ORDER:
                matrix = oracle_matrix(
                    tokens[(name_a, kind_a)], tokens[(name_b, kind_b)], mode, "pairwise"
                )
                rows.append(
                    {
                        "repo_a": name_a,
                        "repo_b": name_b,
                        "vectorizer": mode,
                        "kind_a": kind_a,
                        "kind_b": kind_b,
                        "aggregate": oracle_aggregate(matrix, "max"),
                    }
                )
    return rows


def check_orderings(rows) -> None:
    by_key = {
        (r["repo_a"], r["repo_b"], r["vectorizer"], r["kind_a"], r["kind_b"]): r["aggregate"]
        for r in rows
    }
    problems = []

    def get(pair, mode, ka, kb):
        return by_key[(pair[0], pair[1], mode, ka, kb)]

    margin = 0.02
    for pair in COMPARISONS:
        for mode in ("tfidf", "count"):
            same = min(get(pair, mode, "source", "source"), get(pair, mode, "commits", "commits"))
            cross = max(get(pair, mode, "commits", "source"), get(pair, mode, "readme", "source"))
            if same < cross + margin:
                problems.append(f"{pair} {mode}: same-kind {same:.3f} not above cross-kind {cross:.3f}")
    for mode in ("tfidf", "count"):
        for ka, kb in (("commits", "source"), ("readme", "source")):
            related = get(COMPARISONS[0], mode, ka, kb)
            unrelated = get(COMPARISONS[1], mode, ka, kb)
            if related < unrelated + margin:
                problems.append(
                    f"{ka}:{kb} {mode}: related {related:.3f} not above unrelated {unrelated:.3f}"
                )
    for pair in COMPARISONS:
        for ka, kb in PAIR_ORDER:
            if get(pair, "count", ka, kb) < get(pair, "tfidf", ka, kb):
                problems.append(f"{pair} {ka}:{kb}: count below tfidf")
    if problems:
        raise SystemExit("fixture orderings violated:\n  " + "\n  ".join(problems))


def main() -> int:
    out_dir = ROOT / "src" / "reposim" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)

    corpora = extract_all()
    rows = expected_rows(corpora)
    check_orderings(rows)

    # cross-check: the library must agree with the oracle before freezing
    for name_a, name_b in COMPARISONS:
        report = run_experiment(corpora[name_a], corpora[name_b])
        wanted = {
            (r["vectorizer"], r["kind_a"], r["kind_b"]): r["aggregate"]
            for r in rows
            if r["repo_a"] == name_a and r["repo_b"] == name_b
        }
        for row in report.rows:
            key = (row.vectorizer.value, row.kind_a.value, row.kind_b.value)
            if abs(row.aggregate - wanted[key]) > 1e-9:
                raise SystemExit(
                    f"library disagrees with oracle on {name_a}/{name_b} {key}: "
                    f"{row.aggregate!r} vs {wanted[key]!r}"
                )

    for name in REPO_NAMES:
        path = out_dir / f"{name}.corpus.jsonl"
        path.write_bytes(save_corpus(corpora[name]))
        print(f"wrote {path}")

    expected = {
        "format_version": 1,
        "comparisons": [
            {"corpus_a": f"{a}.corpus.jsonl", "corpus_b": f"{b}.corpus.jsonl"}
            for a, b in COMPARISONS
        ],
        "rows": rows,
    }
    expected_path = out_dir / "expected.json"
    expected_path.write_text(json.dumps(expected, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {expected_path}")

    for r in rows:
        print(
            f"  {r['repo_a']:>10} vs {r['repo_b']:<10} {r['vectorizer']:<6} "
            f"{r['kind_a']}:{r['kind_b']:<8} {r['aggregate']:.6f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
