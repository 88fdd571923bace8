"""Tokenization, detokenization, and the shared domain vocabulary.

Token-level granularity here is the masking granularity: every downstream
stage (mask prediction, slot filling, alignment, BLEU) operates on these
whitespace-and-punctuation word tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

# ASCII punctuation peeled off token edges. Interior punctuation (don't, 3.5)
# stays attached.
PUNCTUATION = set(".,!?;:'\"()")

_STYLE_RE = re.compile(r"^[a-z][a-z0-9_-]*$")


def style_label(name: str) -> str:
    """Validate a style name (non-empty lowercase ASCII) and return it."""
    if not isinstance(name, str) or not _STYLE_RE.match(name):
        raise ValueError(f"invalid style label: {name!r}")
    return name


@dataclass(frozen=True)
class TransferDirection:
    """A source-style to target-style transfer task."""

    source: str
    target: str

    def __post_init__(self) -> None:
        style_label(self.source)
        style_label(self.target)
        if self.source == self.target:
            raise ValueError(f"direction needs two distinct styles, got {self.source!r} twice")

    @classmethod
    def parse(cls, text: str) -> "TransferDirection":
        """Parse 'source:target' (CLI form) or 'source->target' (file form)."""
        sep = "->" if "->" in text else ":"
        parts = text.split(sep)
        if len(parts) != 2:
            raise ValueError(f"cannot parse transfer direction from {text!r}")
        return cls(parts[0].strip(), parts[1].strip())

    @property
    def styles(self) -> tuple[str, str]:
        return (self.source, self.target)

    @property
    def reversed(self) -> "TransferDirection":
        return TransferDirection(self.target, self.source)

    def __str__(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class TokenSeq:
    """A tokenized sentence. Equality is on tokens; ``raw`` keeps the original text."""

    tokens: tuple[str, ...]
    raw: str = field(compare=False)

    def __post_init__(self) -> None:
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"malformed token {tok!r}: tokens must be non-empty and whitespace-free")

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "TokenSeq":
        toks = tuple(tokens)
        return cls(toks, raw=join_tokens(toks))

    @property
    def text(self) -> str:
        return join_tokens(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)


def _split_edge_punct(chunk: str) -> list[str]:
    lead: list[str] = []
    trail: list[str] = []
    while chunk and chunk[0] in PUNCTUATION:
        lead.append(chunk[0])
        chunk = chunk[1:]
    while chunk and chunk[-1] in PUNCTUATION:
        trail.append(chunk[-1])
        chunk = chunk[:-1]
    middle = [chunk] if chunk else []
    return lead + middle + trail[::-1]


def tokenize(text: str) -> TokenSeq:
    """Split on whitespace, then peel leading/trailing punctuation into separate tokens.

    Case is preserved. Total and deterministic; empty input yields an empty sequence.
    """
    tokens: list[str] = []
    for chunk in text.split():
        tokens.extend(_split_edge_punct(chunk))
    return TokenSeq(tuple(tokens), raw=text)


def join_tokens(tokens: Iterable[str]) -> str:
    """Join with single spaces, attaching punctuation-only tokens to the previous token."""
    out: list[str] = []
    for tok in tokens:
        if out and tok and all(ch in PUNCTUATION for ch in tok):
            out[-1] = out[-1] + tok
        else:
            out.append(tok)
    return " ".join(out)


def detokenize(seq: TokenSeq) -> str:
    """Inverse of :func:`tokenize` up to whitespace normalization."""
    return join_tokens(seq.tokens)


@dataclass
class Corpus:
    """An ordered collection of same-style sentences loaded from one file."""

    style: str
    sentences: list[TokenSeq]
    origin: str = ""

    def __post_init__(self) -> None:
        style_label(self.style)

    def texts(self) -> list[str]:
        return [detokenize(s) for s in self.sentences]

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[TokenSeq]:
        return iter(self.sentences)

    def __getitem__(self, idx: int) -> TokenSeq:
        return self.sentences[idx]
