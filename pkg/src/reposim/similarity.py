"""Cosine similarity between weighted vectors and full comparison experiments.

A comparison plan names two artifact kinds, a vectorizer, a vocabulary fit
scope and an aggregation. Under the default pairwise fit the vocabulary
(and hence the idf) is fitted on exactly the two documents of each cell,
which is also why count similarities can never fall below tf-idf ones:
terms unique to one side gain idf weight but never contribute to the dot
product. Corpus fit instead fits one vocabulary over all documents of both
corpora.

Scoring is sequential and uses exactly-rounded float summation, so results
are deterministic and exactly symmetric.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    EmptyMatrix,
    EmptyVocabulary,
    MissingArtifact,
    PairingMismatch,
)
from .ingest import ArtifactCorpus, ArtifactKind
from .report import ReportRow, SimilarityReport, row_order_key
from .textprep import PipelineConfig, TokenDocument, config_digest, preprocess
from .version import __version__
from .vsm import (
    VectorizerMode,
    WeightedVector,
    count_vector,
    fit_vocabulary,
    tfidf_vector,
)

# idf of a term seen in one document out of two: ln((1+2)/(1+1)) + 1.
# Terms shared by both documents of a pair get idf exactly 1.0.
_PAIR_UNIQUE_IDF_SQ = (math.log(1.5) + 1.0) ** 2


class FitScope(Enum):
    PAIRWISE = "pairwise"
    CORPUS = "corpus"


class AggregationKind(Enum):
    MAX = "max"
    MEAN = "mean"
    TOP_K_MEAN = "topk"


@dataclass(frozen=True)
class Aggregation:
    """How a similarity matrix collapses to a single number."""

    kind: AggregationKind
    k: int | None = None

    def __post_init__(self):
        if self.kind is AggregationKind.TOP_K_MEAN:
            if self.k is None or self.k < 1:
                raise ValueError("top-k aggregation needs k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind.value} aggregation takes no k")

    @classmethod
    def max(cls) -> "Aggregation":
        return cls(AggregationKind.MAX)

    @classmethod
    def mean(cls) -> "Aggregation":
        return cls(AggregationKind.MEAN)

    @classmethod
    def top_k_mean(cls, k: int) -> "Aggregation":
        return cls(AggregationKind.TOP_K_MEAN, k)

    @classmethod
    def parse(cls, text: str) -> "Aggregation":
        if text == "max":
            return cls.max()
        if text == "mean":
            return cls.mean()
        if text.startswith("topk:"):
            try:
                return cls.top_k_mean(int(text.split(":", 1)[1]))
            except ValueError as exc:
                raise ValueError(f"bad top-k aggregation: {text!r}") from exc
        raise ValueError(f"unknown aggregation: {text!r} (use max, mean or topk:<k>)")

    def render(self) -> str:
        if self.kind is AggregationKind.TOP_K_MEAN:
            return f"topk:{self.k}"
        return self.kind.value


@dataclass(frozen=True)
class ComparisonPlan:
    kind_a: ArtifactKind
    kind_b: ArtifactKind
    mode: VectorizerMode
    fit_scope: FitScope = FitScope.PAIRWISE
    aggregation: Aggregation = field(default_factory=Aggregation.max)


#: The artifact pairings every experiment runs by default: the two
#: same-kind comparisons, then the two cross-kind ones.
DEFAULT_PAIRS = (
    (ArtifactKind.SOURCE_CODE, ArtifactKind.SOURCE_CODE),
    (ArtifactKind.COMMITS, ArtifactKind.COMMITS),
    (ArtifactKind.COMMITS, ArtifactKind.SOURCE_CODE),
    (ArtifactKind.README, ArtifactKind.SOURCE_CODE),
)


def default_plans(
    modes: Sequence[VectorizerMode] = (VectorizerMode.TFIDF, VectorizerMode.COUNT),
    fit_scope: FitScope = FitScope.PAIRWISE,
    aggregation: Aggregation | None = None,
) -> list[ComparisonPlan]:
    """The standard plan block: every default pair under every mode."""
    if aggregation is None:
        aggregation = Aggregation.max()
    return [
        ComparisonPlan(kind_a, kind_b, mode, fit_scope, aggregation)
        for mode in modes
        for kind_a, kind_b in DEFAULT_PAIRS
    ]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Dense pairwise scores; every cell lies in [0, 1]."""

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    scores: tuple[tuple[float, ...], ...]
    zero_pair_count: int = field(init=False)

    def __post_init__(self):
        if len(self.scores) != len(self.row_ids) or any(
            len(r) != len(self.col_ids) for r in self.scores
        ):
            raise ValueError("matrix shape does not match row/col ids")
        zeros = sum(1 for r in self.scores for v in r if v == 0.0)
        object.__setattr__(self, "zero_pair_count", zeros)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_ids), len(self.col_ids))

    def cells(self) -> list[float]:
        return [v for r in self.scores for v in r]


def _clamp01(x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    return x


def cosine(u: WeightedVector, v: WeightedVector) -> float:
    """Cosine of two nonnegative vectors; zero vectors compare as 0.0.

    Identical vectors compare as exactly 1.0, and the result is exactly
    symmetric in its arguments.
    """
    if u.dim != v.dim:
        raise DimensionMismatch(f"dim {u.dim} vs {v.dim}")
    if u.norm == 0.0 or v.norm == 0.0:
        return 0.0
    if u.entries == v.entries:
        return 1.0
    products = []
    i = j = 0
    ue, ve = u.entries, v.entries
    while i < len(ue) and j < len(ve):
        iu, wu = ue[i]
        iv, wv = ve[j]
        if iu == iv:
            products.append(wu * wv)
            i += 1
            j += 1
        elif iu < iv:
            i += 1
        else:
            j += 1
    if not products:
        return 0.0
    return _clamp01(math.fsum(products) / (u.norm * v.norm))


@dataclass(frozen=True)
class _PreparedDoc:
    doc: TokenDocument
    counts: dict[str, int]
    sum_sq: float


def _prepare(corpus: ArtifactCorpus, cfg: PipelineConfig) -> list[_PreparedDoc]:
    prepared = []
    for raw in corpus.documents:
        token_doc = preprocess(raw, cfg)
        counts = dict(Counter(token_doc.tokens))
        sum_sq = math.fsum(c * c for c in counts.values())
        prepared.append(_PreparedDoc(token_doc, counts, sum_sq))
    return prepared


def _pairwise_cell(a: _PreparedDoc, b: _PreparedDoc, tfidf: bool) -> float:
    """One cell under pairwise fit, straight from the token counts.

    Equivalent to fitting a two-document vocabulary and vectorizing, but
    without building the intermediate structures: shared terms carry idf
    exactly 1.0 and one-sided terms only inflate their own vector's norm.
    """
    if not a.counts or not b.counts:
        return 0.0
    if a.counts == b.counts:
        return 1.0
    if len(a.counts) <= len(b.counts):
        shared = [(ca, b.counts[t]) for t, ca in a.counts.items() if t in b.counts]
    else:
        shared = [(a.counts[t], cb) for t, cb in b.counts.items() if t in a.counts]
    if not shared:
        return 0.0
    dot = math.fsum(ca * cb for ca, cb in shared)
    if tfidf:
        shared_a = math.fsum(ca * ca for ca, _ in shared)
        shared_b = math.fsum(cb * cb for _, cb in shared)
        norm_a = math.sqrt(shared_a + _PAIR_UNIQUE_IDF_SQ * (a.sum_sq - shared_a))
        norm_b = math.sqrt(shared_b + _PAIR_UNIQUE_IDF_SQ * (b.sum_sq - shared_b))
    else:
        norm_a = math.sqrt(a.sum_sq)
        norm_b = math.sqrt(b.sum_sq)
    return _clamp01(dot / (norm_a * norm_b))


def _score_matrix(
    prep_a: Sequence[_PreparedDoc], prep_b: Sequence[_PreparedDoc], plan: ComparisonPlan
) -> SimilarityMatrix:
    row_ids = tuple(p.doc.doc_id for p in prep_a)
    col_ids = tuple(p.doc.doc_id for p in prep_b)
    if plan.fit_scope is FitScope.PAIRWISE:
        tfidf = plan.mode is VectorizerMode.TFIDF
        scores = tuple(
            tuple(_pairwise_cell(a, b, tfidf) for b in prep_b) for a in prep_a
        )
    else:
        try:
            vocab = fit_vocabulary([p.doc for p in prep_a] + [p.doc for p in prep_b])
        except EmptyVocabulary:
            scores = tuple(tuple(0.0 for _ in prep_b) for _ in prep_a)
            return SimilarityMatrix(row_ids, col_ids, scores)
        vectorize = tfidf_vector if plan.mode is VectorizerMode.TFIDF else count_vector
        vecs_a = [vectorize(p.doc, vocab) for p in prep_a]
        vecs_b = [vectorize(p.doc, vocab) for p in prep_b]
        scores = tuple(tuple(cosine(u, v) for v in vecs_b) for u in vecs_a)
    return SimilarityMatrix(row_ids, col_ids, scores)


def compare_pair(
    corpus_a: ArtifactCorpus,
    corpus_b: ArtifactCorpus,
    plan: ComparisonPlan,
    cfg: PipelineConfig | None = None,
) -> SimilarityMatrix:
    """Score every document of corpus A against every document of corpus B."""
    if corpus_a.kind is not plan.kind_a or corpus_b.kind is not plan.kind_b:
        raise ValueError(
            f"plan compares {plan.kind_a.value}:{plan.kind_b.value}, corpora are "
            f"{corpus_a.kind.value}:{corpus_b.kind.value}"
        )
    cfg = cfg or PipelineConfig()
    return _score_matrix(_prepare(corpus_a, cfg), _prepare(corpus_b, cfg), plan)


def aggregate(matrix: SimilarityMatrix, aggregation: Aggregation) -> float:
    """Collapse a matrix to its reported statistic."""
    cells = matrix.cells()
    if not cells:
        raise EmptyMatrix("cannot aggregate a matrix with zero cells")
    if aggregation.kind is AggregationKind.MAX:
        return max(cells)
    if aggregation.kind is AggregationKind.MEAN:
        return math.fsum(cells) / len(cells)
    top = sorted(cells, reverse=True)[: min(aggregation.k, len(cells))]
    return math.fsum(top) / len(top)


def _metadata_value(values: set[str]) -> str | None:
    if not values:
        return None
    if len(values) == 1:
        return values.pop()
    return "mixed"


def _repo_name(corpora: Mapping[ArtifactKind, ArtifactCorpus]) -> str:
    names = {c.repo_name for c in corpora.values()}
    if len(names) != 1:
        raise ValueError(f"corpora map must hold exactly one repository, got {sorted(names)}")
    return names.pop()


def run_experiment(
    corpora_a: Mapping[ArtifactKind, ArtifactCorpus],
    corpora_b: Mapping[ArtifactKind, ArtifactCorpus],
    plans: Sequence[ComparisonPlan] | None = None,
    cfg: PipelineConfig | None = None,
    *,
    skip_missing: bool = False,
    timestamp: str | None = None,
) -> SimilarityReport:
    """Run every plan over two repositories' corpora and build the report.

    With ``skip_missing`` plans whose artifact kind a repository lacks are
    dropped; otherwise the first one raises MissingArtifact. The timestamp
    is caller-supplied (and absent by default) so identical inputs always
    produce byte-identical reports.
    """
    cfg = cfg or PipelineConfig()
    if plans is None:
        plans = default_plans()
    repo_a = _repo_name(corpora_a)
    repo_b = _repo_name(corpora_b)

    prep_cache: dict[tuple[int, ArtifactKind], list[_PreparedDoc]] = {}

    def prepared(side: int, corpora: Mapping[ArtifactKind, ArtifactCorpus], kind: ArtifactKind):
        key = (side, kind)
        if key not in prep_cache:
            prep_cache[key] = _prepare(corpora[kind], cfg)
        return prep_cache[key]

    rows = []
    for plan in plans:
        missing = None
        if plan.kind_a not in corpora_a:
            missing = MissingArtifact(plan.kind_a, repo_a)
        elif plan.kind_b not in corpora_b:
            missing = MissingArtifact(plan.kind_b, repo_b)
        if missing is not None:
            if skip_missing:
                continue
            raise missing
        matrix = _score_matrix(
            prepared(0, corpora_a, plan.kind_a), prepared(1, corpora_b, plan.kind_b), plan
        )
        rows.append(
            ReportRow(
                repo_a=repo_a,
                repo_b=repo_b,
                vectorizer=plan.mode,
                kind_a=plan.kind_a,
                kind_b=plan.kind_b,
                aggregate=aggregate(matrix, plan.aggregation),
                rows=matrix.shape[0],
                cols=matrix.shape[1],
                zero_pairs=matrix.zero_pair_count,
            )
        )
    rows.sort(key=row_order_key)

    metadata = {
        "config_digest": config_digest(cfg),
        "fit_scope": _metadata_value({p.fit_scope.value for p in plans}),
        "aggregation": _metadata_value({p.aggregation.render() for p in plans}),
        "tool_version": __version__,
        "timestamp": timestamp,
    }
    return SimilarityReport(rows=tuple(rows), metadata=metadata)


@dataclass(frozen=True)
class VectorizerDelta:
    """Paired comparison of the two vectorizers' aggregates."""

    keys: tuple[tuple[str, str, ArtifactKind, ArtifactKind], ...]
    deltas: tuple[float, ...]
    mean_delta: float
    w_statistic: float
    p_value: float
    n_nonzero: int


def _signed_rank_exact(deltas: Sequence[float]) -> tuple[float, float, int]:
    """Wilcoxon signed-rank W and exact two-sided p-value.

    Zero deltas are discarded; ties get average ranks. The p-value is exact:
    the null distribution of the positive-rank sum is enumerated by dynamic
    programming over doubled ranks (doubling keeps tied average ranks
    integral), which is equivalent to enumerating all 2^n sign assignments.
    An all-zero sample is degenerate and reported as W=0, p=1.
    """
    nonzero = [d for d in deltas if d != 0.0]
    n = len(nonzero)
    if n == 0:
        return 0.0, 1.0, 0

    order = sorted(range(n), key=lambda i: abs(nonzero[i]))
    ranks2 = [0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and abs(nonzero[order[j + 1]]) == abs(nonzero[order[i]]):
            j += 1
        doubled = (i + 1) + (j + 1)  # twice the average of 1-based positions i..j
        for k in range(i, j + 1):
            ranks2[order[k]] = doubled
        i = j + 1

    w_plus2 = sum(r for d, r in zip(nonzero, ranks2) if d > 0.0)
    total2 = n * (n + 1)
    w_minus2 = total2 - w_plus2

    counts = [0] * (total2 + 1)
    counts[0] = 1
    for r in ranks2:
        for s in range(total2, r - 1, -1):
            counts[s] += counts[s - r]
    count_le = sum(counts[: w_plus2 + 1])
    count_ge = sum(counts[w_plus2:])
    numerator = min(2 * min(count_le, count_ge), 2**n)
    p_value = numerator / 2**n
    return min(w_plus2, w_minus2) / 2.0, p_value, n


def _row_key(row: ReportRow) -> tuple[str, str, ArtifactKind, ArtifactKind]:
    return (row.repo_a, row.repo_b, row.kind_a, row.kind_b)


def vectorizer_delta(
    tfidf_rows: Sequence[ReportRow], count_rows: Sequence[ReportRow]
) -> VectorizerDelta:
    """Per-pair aggregate differences (count minus tf-idf) plus the exact
    signed-rank test over them. Rows must pair one-to-one by repo pair and
    artifact pair."""
    for row in tfidf_rows:
        if row.vectorizer is not VectorizerMode.TFIDF:
            raise PairingMismatch(f"non-tfidf row in tfidf argument: {_row_key(row)}")
    for row in count_rows:
        if row.vectorizer is not VectorizerMode.COUNT:
            raise PairingMismatch(f"non-count row in count argument: {_row_key(row)}")

    tfidf_map = {_row_key(r): r.aggregate for r in tfidf_rows}
    count_map = {_row_key(r): r.aggregate for r in count_rows}
    if len(tfidf_map) != len(tfidf_rows) or len(count_map) != len(count_rows):
        raise PairingMismatch("duplicate (repo pair, artifact pair) keys")
    if set(tfidf_map) != set(count_map):
        only_t = sorted(set(tfidf_map) - set(count_map))
        only_c = sorted(set(count_map) - set(tfidf_map))
        raise PairingMismatch(f"unpaired rows: tfidf-only={only_t}, count-only={only_c}")

    keys = tuple(
        sorted(tfidf_map, key=lambda k: (k[0], k[1], k[2].value, k[3].value))
    )
    deltas = tuple(count_map[k] - tfidf_map[k] for k in keys)
    mean_delta = math.fsum(deltas) / len(deltas) if deltas else 0.0
    w_statistic, p_value, n_nonzero = _signed_rank_exact(deltas)
    return VectorizerDelta(
        keys=keys,
        deltas=deltas,
        mean_delta=mean_delta,
        w_statistic=w_statistic,
        p_value=p_value,
        n_nonzero=n_nonzero,
    )
