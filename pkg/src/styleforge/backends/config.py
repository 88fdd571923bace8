"""Backend resolution from a JSON config block.

The config is an object with the five role keys, each either
``{"kind": "http", "url": ...}`` or a mock kind with its parameters.
Relative corpus paths inside mock params resolve against the config file's
directory.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .base import BackendSet
from .http import HttpClassifier, HttpEmbedder, HttpFiller, HttpGenerator, HttpPerplexity
from .mocks import (
    AntonymGenerator,
    HashingEmbedder,
    LexiconClassifier,
    TemplateFiller,
    UnigramPerplexity,
)

ROLES = ("classifier", "filler", "generator", "embedder", "ppl_scorer")

_HTTP_CLIENTS = {
    "classifier": HttpClassifier,
    "filler": HttpFiller,
    "generator": HttpGenerator,
    "embedder": HttpEmbedder,
    "ppl_scorer": HttpPerplexity,
}


def _read_corpus_texts(params: Mapping[str, Any], base_dir: Path | None) -> list[str]:
    texts = list(params.get("texts", []))
    paths = list(params.get("corpus_paths", []))
    if "corpus_path" in params:
        paths.append(params["corpus_path"])
    for rel in paths:
        path = Path(rel)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        texts.extend(
            line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()
        )
    if not texts:
        raise ValueError("mock-unigram needs 'texts', 'corpus_path', or 'corpus_paths'")
    return texts


def _build_role(role: str, entry: Mapping[str, Any], base_dir: Path | None) -> Any:
    kind = entry.get("kind")
    if kind == "http":
        url = entry.get("url")
        if not url:
            raise ValueError(f"http backend for {role!r} needs a 'url'")
        return _HTTP_CLIENTS[role](
            url,
            timeout=float(entry.get("timeout", 60.0)),
            bearer_token=entry.get("bearer_token"),
        )
    if kind == "mock-lexicon" and role == "classifier":
        return LexiconClassifier(entry.get("weights"), pole=entry.get("pole", "positive"))
    if kind == "mock-template" and role == "filler":
        return TemplateFiller(entry.get("lexicon"))
    if kind == "mock-antonym" and role == "generator":
        return AntonymGenerator(entry.get("table"))
    if kind == "mock-hash" and role == "embedder":
        return HashingEmbedder(dim=int(entry.get("dim", 64)))
    if kind == "mock-unigram" and role == "ppl_scorer":
        return UnigramPerplexity(_read_corpus_texts(entry, base_dir))
    raise ValueError(f"unknown backend kind {kind!r} for role {role!r}")


def resolve_backends(config: Mapping[str, Any], base_dir: Path | None = None) -> BackendSet:
    """Build the five capabilities from a parsed config block."""
    missing = [role for role in ROLES if role not in config]
    if missing:
        raise ValueError(f"backend config is missing roles: {', '.join(missing)}")
    built = {role: _build_role(role, config[role], base_dir) for role in ROLES}
    kinds = {role: str(config[role].get("kind", "?")) for role in ROLES}
    return BackendSet(kinds=kinds, **built)


def load_backends(path: str | Path) -> BackendSet:
    """Load and resolve a backend config file."""
    path = Path(path)
    config = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(config, Mapping):
        raise ValueError(f"backend config {path} must be a JSON object")
    return resolve_backends(config, base_dir=path.parent)
