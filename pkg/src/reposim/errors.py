"""Exception types raised across the package."""


class RepoSimError(Exception):
    """Base class for every error this package raises on purpose."""


class NoReadmeFound(RepoSimError):
    """No file named README (any extension, any case) at the repository root."""


class EmptySourceSet(RepoSimError):
    """The source-file walk selected zero files."""


class EmptyCommitLog(RepoSimError):
    """The commit log contains zero records."""


class MalformedCommitLog(RepoSimError):
    """A commit-log record header is invalid."""

    def __init__(self, line_no: int, reason: str = "invalid record header"):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class CorpusFormatError(RepoSimError):
    """Corpus interchange bytes are malformed."""


class EmptyVocabulary(RepoSimError):
    """No document contributed any token to the vocabulary."""


class DimensionMismatch(RepoSimError):
    """Two vectors with different dimensions were compared."""


class EmptyMatrix(RepoSimError):
    """Aggregation was requested for a matrix with zero cells."""


class MissingArtifact(RepoSimError):
    """A comparison plan names an artifact kind a repository does not have."""

    def __init__(self, kind, repo: str):
        super().__init__(f"repository {repo!r} has no {kind.value!r} artifact")
        self.kind = kind
        self.repo = repo


class PairingMismatch(RepoSimError):
    """Two report row sets do not pair one-to-one."""
