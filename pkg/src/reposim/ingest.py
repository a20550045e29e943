"""Turn a repository snapshot on disk into per-artifact document corpora.

A snapshot is a working tree plus an optional exported commit log. Three
artifact kinds are extracted: the readme, the commit messages (one document
holding all of them), and the selected source files (one document each).
Corpora round-trip through a JSON-lines interchange format so extraction
and comparison can run as separate steps.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping

from .errors import (
    CorpusFormatError,
    EmptyCommitLog,
    EmptySourceSet,
    MalformedCommitLog,
    NoReadmeFound,
)

CORPUS_FORMAT_VERSION = 1

#: Record separator line between commit-log records. Produce a log with:
#:   git log --pretty=format:"commit %H%n%B%x1e" > commits.log
COMMIT_RECORD_SEPARATOR = "\x1e"

_COMMIT_HEADER_RE = re.compile(r"^commit [0-9a-f]{40}$")

#: Extension ranking for readme resolution: bare README beats README.md
#: beats README.txt beats anything else (those sort by extension).
_README_EXT_RANK = {"": 0, ".md": 1, ".txt": 2}


class ArtifactKind(Enum):
    """The three repository artifact categories this tool compares."""

    README = "readme"
    COMMITS = "commits"
    SOURCE_CODE = "source"


_KIND_BY_VALUE = {k.value: k for k in ArtifactKind}


@dataclass(frozen=True)
class RawDocument:
    """One extracted text document, identified by its origin inside the repo."""

    doc_id: str
    kind: ArtifactKind
    origin: str
    text: str

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if not self.origin or self.origin.startswith("/") or "\\" in self.origin:
            raise ValueError(f"origin must be a relative forward-slash path: {self.origin!r}")


@dataclass(frozen=True)
class ArtifactCorpus:
    """All documents of one artifact kind for one repository."""

    repo_name: str
    kind: ArtifactKind
    documents: tuple[RawDocument, ...]

    def __post_init__(self):
        ids = [d.doc_id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate doc_id in corpus")
        for d in self.documents:
            if d.kind is not self.kind:
                raise ValueError(f"document {d.doc_id!r} has kind {d.kind}, corpus is {self.kind}")
        if self.kind in (ArtifactKind.README, ArtifactKind.COMMITS):
            if len(self.documents) != 1:
                raise ValueError(f"{self.kind.value} corpus must hold exactly one document")
        else:
            origins = [d.origin for d in self.documents]
            if origins != sorted(origins) or len(set(origins)) != len(origins):
                raise ValueError("source documents must be strictly sorted by origin")


@dataclass(frozen=True)
class RepoSnapshot:
    """Where to find one repository on disk and which files count as source."""

    repo_name: str
    root: Path
    commit_log_path: Path | None = None
    source_extensions: frozenset[str] = frozenset({"java", "xml"})

    def __post_init__(self):
        normalized = frozenset(e.lower().lstrip(".") for e in self.source_extensions)
        if not normalized or "" in normalized:
            raise ValueError("source_extensions must contain non-empty extensions")
        object.__setattr__(self, "source_extensions", normalized)
        object.__setattr__(self, "root", Path(self.root))
        if self.commit_log_path is not None:
            object.__setattr__(self, "commit_log_path", Path(self.commit_log_path))


def _read_text(path: Path) -> str:
    # Mixed encodings are common in the wild; extraction must not abort.
    return path.read_text(encoding="utf-8", errors="replace")


def discover_readme(snapshot: RepoSnapshot) -> RawDocument:
    """Return the root-level readme, picking deterministically among variants.

    A candidate is any regular file whose name without extension is
    ``readme`` case-insensitively. Raises NoReadmeFound when there is none.
    """
    candidates = []
    for entry in snapshot.root.iterdir():
        if not entry.is_file():
            continue
        stem, ext = os.path.splitext(entry.name)
        if stem.lower() != "readme":
            continue
        rank = _README_EXT_RANK.get(ext.lower(), 3)
        candidates.append((rank, ext.lower(), entry.name, entry))
    if not candidates:
        raise NoReadmeFound(f"no README file at {snapshot.root}")
    candidates.sort(key=lambda c: c[:3])
    chosen = candidates[0][3]
    return RawDocument(
        doc_id=chosen.name,
        kind=ArtifactKind.README,
        origin=chosen.name,
        text=_read_text(chosen),
    )


def collect_source_files(snapshot: RepoSnapshot) -> list[RawDocument]:
    """Walk the tree and return one document per matching source file.

    Files are matched by lowercase extension, anything under a ``.git``
    component is skipped, and the result is sorted by relative path.
    Raises EmptySourceSet when nothing matches.
    """
    selected: list[str] = []
    for dirpath, dirnames, filenames in os.walk(snapshot.root):
        dirnames[:] = sorted(d for d in dirnames if d != ".git")
        for name in filenames:
            if name == ".git":
                continue
            ext = os.path.splitext(name)[1].lstrip(".").lower()
            if ext not in snapshot.source_extensions:
                continue
            full = Path(dirpath) / name
            if not full.is_file():
                continue
            selected.append(full.relative_to(snapshot.root).as_posix())
    if not selected:
        raise EmptySourceSet(
            f"no files with extensions {sorted(snapshot.source_extensions)} under {snapshot.root}"
        )
    selected.sort()
    return [
        RawDocument(
            doc_id=rel,
            kind=ArtifactKind.SOURCE_CODE,
            origin=rel,
            text=_read_text(snapshot.root / rel),
        )
        for rel in selected
    ]


def parse_commit_log(path: Path) -> RawDocument:
    """Parse an exported commit log into a single commits document.

    The format is line-oriented: each record starts with a header line
    ``commit <40-hex-hash>`` followed by the message lines, and records are
    separated by a line holding only the record separator character.
    The resulting text is the messages only (subject plus body), joined by
    single newlines; hashes never reach the text.
    """
    # split on \n only: str.splitlines would swallow the \x1e separators
    lines = _read_text(Path(path)).split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    messages: list[str] = []

    record: list[tuple[int, str]] = []

    def flush():
        if not record or all(not text for _, text in record):
            record.clear()
            return
        header_no, header = record[0]
        if not _COMMIT_HEADER_RE.match(header):
            raise MalformedCommitLog(header_no, f"expected 'commit <40-hex>', got {header!r}")
        body = [text for _, text in record[1:]]
        while body and not body[-1]:
            body.pop()
        messages.append("\n".join(body))
        record.clear()

    for line_no, line in enumerate(lines, start=1):
        if line == COMMIT_RECORD_SEPARATOR:
            flush()
        else:
            record.append((line_no, line))
    flush()

    if not messages:
        raise EmptyCommitLog(f"no commit records in {path}")
    return RawDocument(
        doc_id="commits",
        kind=ArtifactKind.COMMITS,
        origin="commits",
        text="\n".join(messages),
    )


def build_corpus(
    snapshot: RepoSnapshot,
) -> tuple[dict[ArtifactKind, ArtifactCorpus], list[str]]:
    """Extract every available artifact kind from a snapshot.

    Returns the corpora found plus warning strings for each kind that could
    not be extracted; only an unreadable root is fatal.
    """
    if not snapshot.root.is_dir():
        raise FileNotFoundError(f"repository root is not a readable directory: {snapshot.root}")

    corpora: dict[ArtifactKind, ArtifactCorpus] = {}
    warnings: list[str] = []

    try:
        readme = discover_readme(snapshot)
        corpora[ArtifactKind.README] = ArtifactCorpus(
            snapshot.repo_name, ArtifactKind.README, (readme,)
        )
    except NoReadmeFound as exc:
        warnings.append(f"readme: {exc}")

    if snapshot.commit_log_path is None:
        warnings.append("commits: no commit log provided")
    elif not snapshot.commit_log_path.is_file():
        warnings.append(f"commits: log file not found: {snapshot.commit_log_path}")
    else:
        try:
            commits = parse_commit_log(snapshot.commit_log_path)
            corpora[ArtifactKind.COMMITS] = ArtifactCorpus(
                snapshot.repo_name, ArtifactKind.COMMITS, (commits,)
            )
        except (MalformedCommitLog, EmptyCommitLog) as exc:
            warnings.append(f"commits: {exc}")

    try:
        sources = collect_source_files(snapshot)
        corpora[ArtifactKind.SOURCE_CODE] = ArtifactCorpus(
            snapshot.repo_name, ArtifactKind.SOURCE_CODE, tuple(sources)
        )
    except EmptySourceSet as exc:
        warnings.append(f"source: {exc}")

    return corpora, warnings


def _dump_line(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def save_corpus(corpora: Mapping[ArtifactKind, ArtifactCorpus]) -> bytes:
    """Serialize corpora of one repository to deterministic JSON-lines bytes."""
    repo_names = {c.repo_name for c in corpora.values()}
    if len(repo_names) > 1:
        raise ValueError(f"corpora belong to different repositories: {sorted(repo_names)}")
    for kind, corpus in corpora.items():
        if kind is not corpus.kind:
            raise ValueError(f"map key {kind} does not match corpus kind {corpus.kind}")

    kinds = sorted(corpora, key=lambda k: k.value)
    repo_name = next(iter(repo_names)) if repo_names else ""
    header = {
        "repo_name": repo_name,
        "kinds": [k.value for k in kinds],
        "counts": {k.value: len(corpora[k].documents) for k in kinds},
        "format_version": CORPUS_FORMAT_VERSION,
    }
    lines = [_dump_line(header)]
    for kind in kinds:
        for doc in corpora[kind].documents:
            lines.append(
                _dump_line(
                    {
                        "doc_id": doc.doc_id,
                        "kind": doc.kind.value,
                        "origin": doc.origin,
                        "text": doc.text,
                    }
                )
            )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _load_json_line(line: str, line_no: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"line {line_no}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CorpusFormatError(f"line {line_no}: expected a JSON object")
    return obj


def load_corpus(data: bytes) -> dict[ArtifactKind, ArtifactCorpus]:
    """Parse corpus interchange bytes back into corpora.

    Inverse of save_corpus; raises CorpusFormatError on any malformation.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"not valid UTF-8: {exc}") from exc
    # split on \n only: document text may hold U+2028-style separators that
    # json leaves unescaped and str.splitlines would treat as line breaks
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CorpusFormatError("empty corpus file")

    header = _load_json_line(lines[0], 1)
    if set(header) != {"repo_name", "kinds", "counts", "format_version"}:
        raise CorpusFormatError(f"bad header fields: {sorted(header)}")
    if header["format_version"] != CORPUS_FORMAT_VERSION:
        raise CorpusFormatError(f"unsupported format_version: {header['format_version']!r}")
    repo_name = header["repo_name"]
    if not isinstance(repo_name, str):
        raise CorpusFormatError("repo_name must be a string")
    kind_names = header["kinds"]
    if not isinstance(kind_names, list) or len(set(kind_names)) != len(kind_names):
        raise CorpusFormatError("kinds must be a list of unique kind names")
    counts = header["counts"]

    kinds: list[ArtifactKind] = []
    for name in kind_names:
        if name not in _KIND_BY_VALUE:
            raise CorpusFormatError(f"unknown artifact kind: {name!r}")
        kinds.append(_KIND_BY_VALUE[name])
    if not isinstance(counts, dict) or set(counts) != set(kind_names):
        raise CorpusFormatError("counts must map exactly the declared kinds")

    docs_by_kind: dict[ArtifactKind, list[RawDocument]] = {k: [] for k in kinds}
    for line_no, line in enumerate(lines[1:], start=2):
        obj = _load_json_line(line, line_no)
        if set(obj) != {"doc_id", "kind", "origin", "text"}:
            raise CorpusFormatError(f"line {line_no}: bad document fields: {sorted(obj)}")
        if obj["kind"] not in _KIND_BY_VALUE:
            raise CorpusFormatError(f"line {line_no}: unknown artifact kind: {obj['kind']!r}")
        kind = _KIND_BY_VALUE[obj["kind"]]
        if kind not in docs_by_kind:
            raise CorpusFormatError(f"line {line_no}: document kind {obj['kind']!r} not declared")
        if not all(isinstance(obj[f], str) for f in ("doc_id", "origin", "text")):
            raise CorpusFormatError(f"line {line_no}: document fields must be strings")
        try:
            docs_by_kind[kind].append(
                RawDocument(doc_id=obj["doc_id"], kind=kind, origin=obj["origin"], text=obj["text"])
            )
        except ValueError as exc:
            raise CorpusFormatError(f"line {line_no}: {exc}") from exc

    corpora: dict[ArtifactKind, ArtifactCorpus] = {}
    for kind in kinds:
        docs = docs_by_kind[kind]
        if counts[kind.value] != len(docs):
            raise CorpusFormatError(
                f"declared {counts[kind.value]} {kind.value} documents, found {len(docs)}"
            )
        if not docs:
            raise CorpusFormatError(f"kind {kind.value!r} declared with zero documents")
        try:
            corpora[kind] = ArtifactCorpus(repo_name, kind, tuple(docs))
        except ValueError as exc:
            raise CorpusFormatError(str(exc)) from exc
    return corpora
