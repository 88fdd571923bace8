"""Contracts for the five model capabilities and the validating backend facade.

Every strategy talks to a :class:`BackendSet`, which enforces the batch
contracts (index alignment, probability sums, slot preservation, finite
perplexities) regardless of whether the underlying implementation is an
in-process mock or an HTTP service.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence

from ..masking import MaskedText, SLOT
from ..textcore import TokenSeq


class BackendError(Exception):
    """A model backend failed; ``index`` points at the offending batch item."""

    def __init__(self, message: str, *, index: int | None = None):
        super().__init__(message if index is None else f"{message} (batch item {index})")
        self.index = index


class BackendUnreachable(BackendError):
    """Transport-level failure after the single retry."""


class MalformedResponse(BackendError):
    """Non-2xx status, schema violation, or a broken output contract."""


@dataclass(frozen=True)
class TokenScore:
    token: str
    score: float


@dataclass(frozen=True)
class ClassifyResult:
    """Style probabilities plus per-token attention-style scores, aligned 1:1 with input tokens."""

    probs: Mapping[str, float]
    token_scores: tuple[TokenScore, ...]


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = 0.0
    max_tokens: int = 128

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")
        if self.max_tokens < 1:
            raise ValueError(f"max_tokens must be positive, got {self.max_tokens}")


class Classifier(Protocol):
    def classify(self, texts: Sequence[TokenSeq], styles: tuple[str, str]) -> list[ClassifyResult]: ...


class Filler(Protocol):
    def fill(self, items: Sequence[tuple[MaskedText, str]]) -> list[TokenSeq]: ...


class Generator(Protocol):
    def generate(self, prompts: Sequence[str], params: GenerationParams) -> list[str]: ...


class Embedder(Protocol):
    def embed(self, texts: Sequence[str]) -> list[list[float]]: ...


class PerplexityScorer(Protocol):
    def perplexity(self, texts: Sequence[str]) -> list[float]: ...


def _check_fill_output(masked: MaskedText, out: TokenSeq, index: int) -> None:
    if SLOT in out.tokens:
        raise MalformedResponse("slot left unfilled in fill output", index=index)
    # Exact template match: kept tokens verbatim in order, each slot >= 1 tokens.
    parts = [
        r"\S+(?: \S+)*" if seg is None else re.escape(seg) for seg in masked.segments
    ]
    pattern = "^" + (" ".join(parts) if parts else "") + "$"
    if re.match(pattern, " ".join(out.tokens)) is None:
        raise MalformedResponse(
            "fill output does not preserve non-slot tokens around filled slots", index=index
        )


@dataclass(frozen=True)
class BackendSet:
    """The five resolved capabilities with uniform contract validation.

    Handles are immutable after construction and safe to share across threads;
    batched outputs are always ordered by input index.
    """

    classifier: Classifier
    filler: Filler
    generator: Generator
    embedder: Embedder
    ppl_scorer: PerplexityScorer
    kinds: Mapping[str, str] = field(default_factory=dict)

    def classify(self, texts: Sequence[TokenSeq], styles: tuple[str, str]) -> list[ClassifyResult]:
        if not texts:
            raise ValueError("classify needs a non-empty batch")
        if len(styles) != 2 or styles[0] == styles[1]:
            raise ValueError(f"classify needs two distinct styles, got {styles!r}")
        results = self.classifier.classify(texts, styles)
        if len(results) != len(texts):
            raise MalformedResponse(
                f"classifier returned {len(results)} results for {len(texts)} inputs"
            )
        for i, (seq, res) in enumerate(zip(texts, results)):
            if set(res.probs) != set(styles):
                raise MalformedResponse(
                    f"classifier probs keyed by {sorted(res.probs)}, expected {sorted(styles)}",
                    index=i,
                )
            total = sum(res.probs.values())
            if abs(total - 1.0) > 1e-6:
                raise MalformedResponse(f"classifier probs sum to {total}", index=i)
            if len(res.token_scores) != len(seq.tokens):
                raise MalformedResponse(
                    f"token_scores length {len(res.token_scores)} != token count {len(seq.tokens)}",
                    index=i,
                )
            if any(ts.score < 0 for ts in res.token_scores):
                raise MalformedResponse("negative token score", index=i)
        return results

    def fill(self, items: Sequence[tuple[MaskedText, str]]) -> list[TokenSeq]:
        if not items:
            return []
        outputs = self.filler.fill(items)
        if len(outputs) != len(items):
            raise MalformedResponse(f"filler returned {len(outputs)} results for {len(items)} inputs")
        for i, ((masked, _style), out) in enumerate(zip(items, outputs)):
            _check_fill_output(masked, out, i)
        return outputs

    def generate(self, prompts: Sequence[str], params: GenerationParams) -> list[str]:
        if not prompts:
            raise ValueError("generate needs a non-empty batch")
        completions = self.generator.generate(prompts, params)
        if len(completions) != len(prompts):
            raise MalformedResponse(
                f"generator returned {len(completions)} results for {len(prompts)} prompts"
            )
        for i, text in enumerate(completions):
            if not text.strip():
                raise MalformedResponse("empty completion", index=i)
        return completions

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        if not texts:
            raise ValueError("embed needs a non-empty batch")
        vectors = self.embedder.embed(texts)
        if len(vectors) != len(texts):
            raise MalformedResponse(f"embedder returned {len(vectors)} vectors for {len(texts)} texts")
        dim = len(vectors[0])
        for i, vec in enumerate(vectors):
            if len(vec) != dim:
                raise MalformedResponse(
                    f"embedding dimension drift: {len(vec)} != {dim}", index=i
                )
        return [list(vec) for vec in vectors]

    def perplexity(self, texts: Sequence[str]) -> list[float]:
        if not texts:
            raise ValueError("perplexity needs a non-empty batch")
        values = self.ppl_scorer.perplexity(texts)
        if len(values) != len(texts):
            raise MalformedResponse(f"scorer returned {len(values)} values for {len(texts)} texts")
        for i, value in enumerate(values):
            if not math.isfinite(value):
                raise MalformedResponse(f"non-finite perplexity {value}", index=i)
            if value < 1.0:
                raise MalformedResponse(f"perplexity {value} below 1", index=i)
        return list(values)
