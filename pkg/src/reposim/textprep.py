"""Normalization of raw document text into token sequences.

The pipeline is: tokenize on non-alphanumeric characters, optionally split
compound identifiers (camelCase, acronym runs, letter/digit boundaries),
lowercase, drop short tokens and stopwords, optionally stem, then drop
stopwords again because a stem may collide with one (``doing`` stems to
``do``). Stemming can shorten a word below the length floor, so the floor
is applied once more after it.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .ingest import ArtifactKind, RawDocument
from .porter import stem as porter_stem

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")
_HAS_LETTER_RE = re.compile(r"[A-Za-z]")

#: Shape every emitted token must have: a letter followed by letters/digits.
TOKEN_SHAPE_RE = re.compile(r"[a-z][a-z0-9]*")


@dataclass(frozen=True)
class TokenDocument:
    """A preprocessed document: an ordered sequence of normalized tokens."""

    doc_id: str
    kind: ArtifactKind
    tokens: tuple[str, ...]

    @property
    def is_empty(self) -> bool:
        return not self.tokens


def load_stopwords(path: Path) -> frozenset[str]:
    """Read a stopword list: one lowercase word per line, blank lines ignored."""
    words = frozenset(
        line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()
    )
    return words


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The embedded 174-word English stopword list."""
    text = resources.files("reposim").joinpath("stopwords.txt").read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the text pipeline; the defaults are what reports refer to."""

    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    split_identifiers: bool = True
    stem: bool = True
    min_token_len: int = 2

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        bad = [w for w in self.stopwords if w != w.lower()]
        if bad:
            raise ValueError(f"stopwords must be lowercase: {sorted(bad)[:5]}")


def tokenize(text: str) -> list[str]:
    """Split on anything outside [A-Za-z0-9]; drop pieces without a letter."""
    return [piece for piece in _TOKEN_RE.findall(text) if _HAS_LETTER_RE.search(piece)]


def split_identifier(token: str) -> list[str]:
    """Split a compound identifier into lowercase pieces.

    Boundaries sit at lower-to-upper transitions, at letter/digit
    transitions in both directions, and before the last capital of an
    uppercase run that is followed by lowercase (XMLParser -> xml, parser).
    """
    if not token:
        return []
    cuts = [0]
    for i in range(1, len(token)):
        prev, cur = token[i - 1], token[i]
        if prev.islower() and cur.isupper():
            cuts.append(i)
        elif prev.isalpha() and cur.isdigit():
            cuts.append(i)
        elif prev.isdigit() and cur.isalpha():
            cuts.append(i)
        elif (
            prev.isupper()
            and cur.isupper()
            and i + 1 < len(token)
            and token[i + 1].islower()
        ):
            cuts.append(i)
    cuts.append(len(token))
    return [token[a:b].lower() for a, b in zip(cuts, cuts[1:])]


def stem(token: str) -> str:
    """Stem one lowercase alphabetic token."""
    return porter_stem(token)


def preprocess(doc: RawDocument, cfg: PipelineConfig | None = None) -> TokenDocument:
    """Run the whole pipeline over one raw document."""
    if cfg is None:
        cfg = PipelineConfig()
    if cfg.split_identifiers:
        pieces = [p for raw in tokenize(doc.text) for p in split_identifier(raw)]
    else:
        pieces = [raw.lower() for raw in tokenize(doc.text)]

    out: list[str] = []
    for tok in pieces:
        if not TOKEN_SHAPE_RE.fullmatch(tok):
            continue
        if len(tok) < cfg.min_token_len or tok in cfg.stopwords:
            continue
        if cfg.stem and tok.isalpha():
            tok = stem(tok)
            if len(tok) < cfg.min_token_len or tok in cfg.stopwords:
                continue
        out.append(tok)
    return TokenDocument(doc_id=doc.doc_id, kind=doc.kind, tokens=tuple(out))


def config_digest(cfg: PipelineConfig) -> str:
    """Short stable digest of a pipeline configuration, for report provenance."""
    stopwords_sha = hashlib.sha256("\n".join(sorted(cfg.stopwords)).encode("utf-8")).hexdigest()
    payload = json.dumps(
        {
            "min_token_len": cfg.min_token_len,
            "split_identifiers": cfg.split_identifiers,
            "stem": cfg.stem,
            "stopwords_sha256": stopwords_sha,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]
