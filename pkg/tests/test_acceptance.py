"""Acceptance suite: one test per release criterion, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Numeric criteria carry their tolerances inline; nothing is deferred
to later calibration.
"""

from __future__ import annotations

import contextlib
import json
import random
import string
import time
from pathlib import Path

import pytest

from conftest import make_synthetic_repo
from oracle import (
    brute_force_signed_rank,
    dense_cosine,
    dense_count_matrix,
    dense_terms,
    dense_tfidf_matrix,
    oracle_matrix,
)
from reposim import (
    ArtifactCorpus,
    ArtifactKind,
    ComparisonPlan,
    FitScope,
    PipelineConfig,
    RawDocument,
    TokenDocument,
    VectorizerMode,
    WeightedVector,
    compare_pair,
    cosine,
    count_vector,
    fit_vocabulary,
    load_corpus,
    preprocess,
    run_experiment,
    tfidf_vector,
)
from reposim.cli import main
from reposim.similarity import _signed_rank_exact
from reposim.textprep import TOKEN_SHAPE_RE

#: identity-ish pipeline: whitespace-separated lowercase tokens pass through
_PASSTHROUGH_CFG = PipelineConfig(
    stopwords=frozenset(), split_identifiers=False, stem=False
)


def _as_source_corpus(repo: str, docs) -> ArtifactCorpus:
    kind = ArtifactKind.SOURCE_CODE
    return ArtifactCorpus(
        repo,
        kind,
        tuple(RawDocument(d.doc_id, kind, d.doc_id, " ".join(d.tokens)) for d in docs),
    )


@contextlib.contextmanager
def criterion(number: int, name: str):
    try:
        yield
    except BaseException:
        print(f"[acceptance] criterion {number} ({name}): FAIL")
        raise
    print(f"[acceptance] criterion {number} ({name}): PASS")


def _tdoc(doc_id: str, tokens) -> TokenDocument:
    return TokenDocument(doc_id, ArtifactKind.SOURCE_CODE, tuple(tokens))


def _random_token_docs(rng, max_docs=5, max_terms=20):
    pool = [f"t{i:02d}" for i in range(max_terms)]
    docs = [
        _tdoc(f"d{i}", rng.choices(pool, k=rng.randint(0, 30)))
        for i in range(rng.randint(1, max_docs))
    ]
    if all(d.is_empty for d in docs):
        docs[0] = _tdoc("d0", [rng.choice(pool)])
    return docs


def test_criterion_1_oracle_equivalence():
    """Sparse pipeline vs dense brute force on 20 random corpora, 1e-9."""
    with criterion(1, "oracle equivalence"):
        rng = random.Random(101)
        started = time.perf_counter()
        for _ in range(20):
            docs = _random_token_docs(rng)
            token_lists = [list(d.tokens) for d in docs]
            vocab = fit_vocabulary(docs)
            terms = dense_terms(token_lists)
            assert vocab.terms == tuple(terms)

            counts = dense_count_matrix(token_lists, terms)
            tfidf = dense_tfidf_matrix(token_lists, terms)
            sparse_counts = [count_vector(d, vocab) for d in docs]
            sparse_tfidf = [tfidf_vector(d, vocab) for d in docs]
            for row in range(len(docs)):
                dense_row_c = {i: w for i, w in enumerate(counts[row]) if w != 0.0}
                assert dense_row_c == {
                    i: w for i, w in sparse_counts[row].entries
                }
                got_t = dict(sparse_tfidf[row].entries)
                for i, want in enumerate(tfidf[row]):
                    assert abs(got_t.get(i, 0.0) - want) <= 1e-9

            for vectors, dense in ((sparse_counts, counts), (sparse_tfidf, tfidf)):
                for i, u in enumerate(vectors):
                    for j, v in enumerate(vectors):
                        assert abs(cosine(u, v) - dense_cosine(dense[i], dense[j])) <= 1e-9

            # full comparison path, both fit scopes, against the dense oracle
            split = max(1, len(docs) // 2)
            corpus_a = _as_source_corpus("a", docs[:split])
            corpus_b = _as_source_corpus("b", docs[split:] or docs[:1])
            tokens_a = [list(d.tokens) for d in docs[:split]]
            tokens_b = [list(d.tokens) for d in (docs[split:] or docs[:1])]
            for mode in VectorizerMode:
                for fit in FitScope:
                    plan = ComparisonPlan(
                        ArtifactKind.SOURCE_CODE, ArtifactKind.SOURCE_CODE, mode, fit
                    )
                    got = compare_pair(corpus_a, corpus_b, plan, _PASSTHROUGH_CFG)
                    want = oracle_matrix(tokens_a, tokens_b, mode.value, fit.value)
                    for i in range(len(tokens_a)):
                        for j in range(len(tokens_b)):
                            assert abs(got.scores[i][j] - want[i][j]) <= 1e-9
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"oracle equivalence took {elapsed:.2f}s"


def test_criterion_2_invariant_suite():
    """Property checks, 1000 random cases each, at their stated tolerances."""
    with criterion(2, "invariant suite"):
        rng = random.Random(202)

        def random_vector(dim):
            k = rng.randint(1, dim)
            idx = sorted(rng.sample(range(dim), k))
            return WeightedVector.from_entries(
                dim, [(i, rng.uniform(0.05, 20.0)) for i in idx]
            )

        for _ in range(1000):
            dim = rng.randint(1, 30)
            u = random_vector(dim)
            v = random_vector(dim)
            c_uv = cosine(u, v)
            # symmetry, exactly
            assert c_uv == cosine(v, u)
            # range
            assert 0.0 <= c_uv <= 1.0
            # scale invariance within 1e-12
            alpha = rng.uniform(0.001, 1000.0)
            scaled = WeightedVector.from_entries(dim, [(i, alpha * w) for i, w in u.entries])
            assert abs(cosine(scaled, v) - c_uv) <= 1e-12
            # identity == 1 and zero == 0, exactly
            twin = WeightedVector.from_entries(dim, list(u.entries))
            assert cosine(u, twin) == 1.0
            assert cosine(u, WeightedVector.zero(dim)) == 0.0

        for _ in range(1000):
            docs = _random_token_docs(rng)
            vocab = fit_vocabulary(docs)
            # unit tf-idf norm within 1e-9
            for d in docs:
                vec = tfidf_vector(d, vocab)
                if vec.entries:
                    assert abs(vec.norm - 1.0) <= 1e-9
            # vocabulary order independence, exact
            shuffled = docs[:]
            rng.shuffle(shuffled)
            assert fit_vocabulary(shuffled) == vocab

        cfg = PipelineConfig()
        alphabet = string.ascii_letters + string.digits + " _-./(){}é \n\t'"
        for i in range(1000):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))
            doc = RawDocument(f"d{i}", ArtifactKind.README, "README.md", text)
            out = preprocess(doc, cfg)
            for tok in out.tokens:
                assert TOKEN_SHAPE_RE.fullmatch(tok)
                assert len(tok) >= cfg.min_token_len
                assert tok not in cfg.stopwords
            assert out.is_empty == (not out.tokens)


def _load_packaged_fixture(name: str):
    from importlib import resources

    blob = resources.files("reposim").joinpath(f"fixtures/{name}.corpus.jsonl").read_bytes()
    return load_corpus(blob)


def test_criterion_3_default_report_block_structure():
    """Defaults produce exactly 8 rows (2 vectorizers x 4 pairs) and each
    reported value equals the max of its underlying matrix."""
    with criterion(3, "default block structure"):
        corpora_a = _load_packaged_fixture("echoplayer")
        corpora_b = _load_packaged_fixture("tunedroid")
        report = run_experiment(corpora_a, corpora_b)
        S, C, R = ArtifactKind.SOURCE_CODE, ArtifactKind.COMMITS, ArtifactKind.README
        expected_structure = [
            (VectorizerMode.TFIDF, S, S),
            (VectorizerMode.TFIDF, C, C),
            (VectorizerMode.TFIDF, C, S),
            (VectorizerMode.TFIDF, R, S),
            (VectorizerMode.COUNT, S, S),
            (VectorizerMode.COUNT, C, C),
            (VectorizerMode.COUNT, C, S),
            (VectorizerMode.COUNT, R, S),
        ]
        assert [(r.vectorizer, r.kind_a, r.kind_b) for r in report.rows] == expected_structure

        for row in report.rows:
            plan = ComparisonPlan(row.kind_a, row.kind_b, row.vectorizer)
            matrix = compare_pair(corpora_a[row.kind_a], corpora_b[row.kind_b], plan)
            assert matrix.shape == (row.rows, row.cols)
            assert row.aggregate == max(matrix.cells())
            assert row.zero_pairs == matrix.zero_pair_count


def test_criterion_4_fixture_qualitative_findings():
    """Frozen fixtures reproduce the qualitative orderings; magnitudes are
    re-derived with the dense oracle and checked to 1e-9."""
    with criterion(4, "fixture qualitative findings"):
        corpora = {name: _load_packaged_fixture(name) for name in
                   ("echoplayer", "tunedroid", "litebrowse")}
        cfg = PipelineConfig()
        aggregates: dict[tuple, float] = {}
        for name_b in ("tunedroid", "litebrowse"):
            report = run_experiment(corpora["echoplayer"], corpora[name_b])
            tokens = {
                (repo, kind): [list(preprocess(d, cfg).tokens) for d in corp[kind].documents]
                for repo, corp in (("echoplayer", corpora["echoplayer"]), (name_b, corpora[name_b]))
                for kind in ArtifactKind
            }
            for row in report.rows:
                want = oracle_matrix(
                    tokens[("echoplayer", row.kind_a)],
                    tokens[(name_b, row.kind_b)],
                    row.vectorizer.value,
                    "pairwise",
                ).max()
                assert abs(row.aggregate - want) <= 1e-9
                aggregates[(name_b, row.vectorizer, row.kind_a, row.kind_b)] = row.aggregate

        S, C, R = ArtifactKind.SOURCE_CODE, ArtifactKind.COMMITS, ArtifactKind.README
        for name_b in ("tunedroid", "litebrowse"):
            for mode in VectorizerMode:
                same_kind = min(
                    aggregates[(name_b, mode, S, S)], aggregates[(name_b, mode, C, C)]
                )
                cross_kind = max(
                    aggregates[(name_b, mode, C, S)], aggregates[(name_b, mode, R, S)]
                )
                # (a) same-kind similarity dominates cross-kind similarity
                assert same_kind > cross_kind

        for mode in VectorizerMode:
            for kind_a in (C, R):
                # (b) cross-kind similarity is higher for the related pair
                assert (
                    aggregates[("tunedroid", mode, kind_a, S)]
                    > aggregates[("litebrowse", mode, kind_a, S)]
                )

        for name_b in ("tunedroid", "litebrowse"):
            for kind_a, kind_b in ((S, S), (C, C), (C, S), (R, S)):
                # (c) count never scores below tf-idf, row by row
                assert (
                    aggregates[(name_b, VectorizerMode.COUNT, kind_a, kind_b)]
                    >= aggregates[(name_b, VectorizerMode.TFIDF, kind_a, kind_b)]
                )


def test_criterion_5_numeric_reproduction_is_not_gated():
    """Exact reproduction of the originally reported aggregates is out of
    reach by design (live repositories drifted, original preprocessing
    unknown); the side-by-side inspection script must exist, nothing more."""
    script = Path(__file__).parent.parent / "scripts" / "compare_with_published.py"
    assert script.is_file()
    print(
        "[acceptance] criterion 5 (exact numeric reproduction): NOT GATED "
        "(inspection only: scripts/compare_with_published.py, needs network)"
    )


def test_criterion_6_wilcoxon_exactness():
    """Dynamic-programming p-values equal full 2^n enumeration for n <= 10."""
    with criterion(6, "exact signed-rank test"):
        rng = random.Random(606)
        cases = [
            [1.0, 2.0, 3.0, 4.0],
            [0.0, 0.0, 0.0],
            [0.5, -0.5, 0.5, -0.5],
            [1.0, 1.0, 1.0, -1.0, 2.0],
        ]
        for n in range(0, 11):
            for _ in range(30):
                cases.append(
                    [
                        rng.choice([-1.0, 1.0]) * rng.choice([0.0, 0.25, 0.5, 1.0, 1.0, 2.0])
                        for _ in range(n)
                    ]
                )
        for deltas in cases:
            assert _signed_rank_exact(deltas) == brute_force_signed_rank(deltas)


def test_criterion_7_determinism_and_runtime(tmp_path):
    """extract+compare twice over 500 source files: byte-identical JSON
    reports, both runs within 60 seconds."""
    with criterion(7, "determinism and runtime"):
        repo_a = make_synthetic_repo(tmp_path / "bulk_a", n_files=500, seed=71)
        repo_b = make_synthetic_repo(tmp_path / "bulk_b", n_files=500, seed=72)

        def one_run(tag: str) -> bytes:
            corpus_a = tmp_path / f"a_{tag}.jsonl"
            corpus_b = tmp_path / f"b_{tag}.jsonl"
            report = tmp_path / f"report_{tag}.json"
            for repo, out, name in ((repo_a, corpus_a, "bulk_a"), (repo_b, corpus_b, "bulk_b")):
                code = main(
                    ["extract", str(repo), "--name", name, "--commit-log",
                     str(repo / "commits.log"), "--out", str(out)]
                )
                assert code == 0
            code = main(
                ["compare", "--a", str(corpus_a), "--b", str(corpus_b),
                 "--format", "json", "--out", str(report)]
            )
            assert code == 0
            return report.read_bytes()

        started = time.perf_counter()
        first = one_run("first")
        second = one_run("second")
        elapsed = time.perf_counter() - started

        assert first == second, "reports are not byte-identical across runs"
        assert elapsed < 60.0, f"two extract+compare runs took {elapsed:.1f}s"
        report = json.loads(first)
        assert len(report["rows"]) == 8
        source_row = next(
            r for r in report["rows"]
            if r["kind_a"] == "source" and r["kind_b"] == "source"
        )
        assert source_row["rows"] == 500 and source_row["cols"] == 500
