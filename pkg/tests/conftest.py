"""Shared helpers for building throwaway repository snapshots."""

from __future__ import annotations

import hashlib
import random
from pathlib import Path

import pytest

from reposim import ArtifactCorpus, ArtifactKind, RawDocument

FIXTURE_REPOS = Path(__file__).parent / "fixtures" / "repos"


def write_commit_log(path: Path, messages: list[str]) -> Path:
    """Write messages in the commit-log interchange format with fake hashes."""
    entries = []
    for i, msg in enumerate(messages):
        digest = hashlib.sha1(f"{i}:{msg}".encode("utf-8")).hexdigest()
        entries.append(f"commit {digest}\n{msg}\n\x1e")
    path.write_text("\n".join(entries) + "\n", encoding="utf-8")
    return path


def make_repo(
    root: Path,
    readme: str | None = "# demo\n\na demo project\n",
    sources: dict[str, str] | None = None,
    commits: list[str] | None = None,
) -> Path:
    """Lay out a minimal repository tree; returns the root."""
    root.mkdir(parents=True, exist_ok=True)
    if readme is not None:
        (root / "README.md").write_text(readme, encoding="utf-8")
    for rel, text in (sources or {}).items():
        target = root / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    if commits is not None:
        write_commit_log(root / "commits.log", commits)
    return root


_WORDS = (
    "activity adapter android application binder bundle button cache callback "
    "client config context controller cursor database decoder dialog download "
    "encoder event fragment handler helper holder intent layout library listener "
    "loader manager media menu message model network notification parser player "
    "preference provider query receiver record registry renderer request response "
    "schedule screen service session settings storage stream task theme thread "
    "timer toolbar touch track update upload utility widget window wrapper"
).split()


def make_synthetic_repo(root: Path, n_files: int, seed: int) -> Path:
    """A larger seeded repository for determinism and runtime tests."""
    rng = random.Random(seed)
    sources = {}
    for i in range(n_files):
        words = rng.sample(_WORDS, rng.randint(8, 16))
        fields = "\n".join(f"    private int {w}Count;" for w in words[:4])
        methods = "\n\n".join(
            f"    public void update{w.capitalize()}() {{\n"
            f"        this.{w}Count += 1;\n    }}"
            for w in words[4:]
        )
        sources[f"src/module{i % 20}/Item{i:03d}.java"] = (
            f"package org.bulk.module{i % 20};\n\n"
            f"public class Item{i:03d} {{\n\n{fields}\n\n{methods}\n}}\n"
        )
    commits = [
        f"{rng.choice(('Add', 'Fix', 'Update', 'Refactor'))} "
        f"{rng.choice(_WORDS)} {rng.choice(_WORDS)} handling"
        for _ in range(30)
    ]
    readme = "# bulk\n\nGenerated project exercising " + " ".join(rng.sample(_WORDS, 12)) + "\n"
    return make_repo(root, readme=readme, sources=sources, commits=commits)


def corpus_of(repo: str, kind: ArtifactKind, docs: list[tuple[str, str]]) -> ArtifactCorpus:
    return ArtifactCorpus(
        repo, kind, tuple(RawDocument(doc_id, kind, doc_id, text) for doc_id, text in docs)
    )


@pytest.fixture
def mini_repo(tmp_path: Path) -> Path:
    return make_repo(
        tmp_path / "mini",
        readme="# Mini\n\nA mini music player demo.\n",
        sources={
            "src/Player.java": "public class Player { void playTrack() {} }",
            "src/Shuffle.java": "public class Shuffle { int nextIndex; }",
            "res/layout/main.xml": "<?xml version=\"1.0\"?><LinearLayout android:id=\"@+id/root\" />",
        },
        commits=["Add shuffle mode", "Fix player crash on empty playlist"],
    )
