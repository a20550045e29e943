"""Textual similarity between software repositories.

Compares repositories through three artifact kinds (readme, commit
messages, source files), both kind-against-same-kind and across kinds,
using count and tf-idf vector space models with cosine similarity.
"""

from .errors import (
    CorpusFormatError,
    DimensionMismatch,
    EmptyCommitLog,
    EmptyMatrix,
    EmptySourceSet,
    EmptyVocabulary,
    MalformedCommitLog,
    MissingArtifact,
    NoReadmeFound,
    PairingMismatch,
    RepoSimError,
)
from .ingest import (
    ArtifactCorpus,
    ArtifactKind,
    RawDocument,
    RepoSnapshot,
    build_corpus,
    collect_source_files,
    discover_readme,
    load_corpus,
    parse_commit_log,
    save_corpus,
)
from .report import (
    ReportRow,
    SimilarityReport,
    emit_csv,
    emit_json,
    parse_json,
    render_table,
    row_order_key,
)
from .similarity import (
    Aggregation,
    AggregationKind,
    ComparisonPlan,
    DEFAULT_PAIRS,
    FitScope,
    SimilarityMatrix,
    VectorizerDelta,
    aggregate,
    compare_pair,
    cosine,
    default_plans,
    run_experiment,
    vectorizer_delta,
)
from .textprep import (
    PipelineConfig,
    TokenDocument,
    config_digest,
    default_stopwords,
    load_stopwords,
    preprocess,
    split_identifier,
    stem,
    tokenize,
)
from .version import __version__
from .vsm import (
    VectorizerMode,
    Vocabulary,
    WeightedVector,
    count_vector,
    fit_vocabulary,
    idf_weights,
    tfidf_vector,
)

__all__ = [
    "Aggregation",
    "AggregationKind",
    "ArtifactCorpus",
    "ArtifactKind",
    "ComparisonPlan",
    "CorpusFormatError",
    "DEFAULT_PAIRS",
    "DimensionMismatch",
    "EmptyCommitLog",
    "EmptyMatrix",
    "EmptySourceSet",
    "EmptyVocabulary",
    "FitScope",
    "MalformedCommitLog",
    "MissingArtifact",
    "NoReadmeFound",
    "PairingMismatch",
    "PipelineConfig",
    "RawDocument",
    "RepoSimError",
    "RepoSnapshot",
    "ReportRow",
    "SimilarityMatrix",
    "SimilarityReport",
    "TokenDocument",
    "VectorizerDelta",
    "VectorizerMode",
    "Vocabulary",
    "WeightedVector",
    "__version__",
    "aggregate",
    "build_corpus",
    "collect_source_files",
    "compare_pair",
    "config_digest",
    "cosine",
    "count_vector",
    "default_plans",
    "default_stopwords",
    "discover_readme",
    "emit_csv",
    "emit_json",
    "fit_vocabulary",
    "idf_weights",
    "load_corpus",
    "load_stopwords",
    "parse_commit_log",
    "parse_json",
    "preprocess",
    "render_table",
    "row_order_key",
    "run_experiment",
    "save_corpus",
    "split_identifier",
    "stem",
    "tfidf_vector",
    "tokenize",
    "vectorizer_delta",
]
