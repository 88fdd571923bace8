"""Deterministic in-process backends for desk-scale runs and tests.

All mocks are pure given their configuration: identical inputs produce
byte-identical outputs, so every pipeline built on them is reproducible.
"""

from __future__ import annotations

import math
import re
import zlib
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence

from ..masking import MaskedText
from ..textcore import TokenSeq, join_tokens, tokenize
from .base import ClassifyResult, GenerationParams, TokenScore

# Tiny default lexicons matching the worked examples in the test suite.
DEFAULT_LEXICON_WEIGHTS: dict[str, float] = {"awful": -2.0, "wonderful": 2.0, "good": 1.0}
DEFAULT_FILL_LEXICON: dict[str, dict[str, float]] = {
    "positive": {"wonderful": 2.0, "good": 1.0},
    "negative": {"awful": 2.0},
}
DEFAULT_ANTONYM_TABLE: dict[str, str] = {
    "awful": "wonderful",
    "wonderful": "awful",
    "no": "plenty of",
    "bad": "good",
    "good": "bad",
}

_REWRITE_RE = re.compile(r"^Rewrite the following text in a (.+?) manner: (.*)$", re.DOTALL)
_REFINE_PREFIX = "Refine the following text without changing its semantic: "
_ICL_MARKER_RE = re.compile(r'"[^"]* Text":')


class LexiconClassifier:
    """Signed word weights; sentence probability is logistic over the weight sum.

    Token scores are absolute weights, so stylistic words of either polarity
    score high while neutral words score zero.
    """

    def __init__(self, weights: Mapping[str, float] | None = None, pole: str = "positive"):
        self.weights = dict(DEFAULT_LEXICON_WEIGHTS if weights is None else weights)
        self.pole = pole

    def classify(self, texts: Sequence[TokenSeq], styles: tuple[str, str]) -> list[ClassifyResult]:
        if self.pole not in styles:
            raise ValueError(
                f"lexicon classifier is oriented toward {self.pole!r}, not in styles {styles!r}"
            )
        other = styles[0] if styles[1] == self.pole else styles[1]
        results = []
        for seq in texts:
            signed = [self.weights.get(tok.lower(), 0.0) for tok in seq.tokens]
            p_pole = 1.0 / (1.0 + math.exp(-sum(signed)))
            probs = {self.pole: p_pole, other: 1.0 - p_pole}
            scores = tuple(TokenScore(tok, abs(w)) for tok, w in zip(seq.tokens, signed))
            results.append(ClassifyResult(probs=probs, token_scores=scores))
        return results


class TemplateFiller:
    """Fills every slot with the highest-weight word of the target style."""

    def __init__(self, lexicon: Mapping[str, Mapping[str, float]] | None = None):
        src = DEFAULT_FILL_LEXICON if lexicon is None else lexicon
        self.lexicon = {style: dict(words) for style, words in src.items()}

    def _top_word(self, style: str) -> str:
        words = self.lexicon.get(style)
        if not words:
            raise ValueError(f"template filler has no lexicon for style {style!r}")
        return min(words, key=lambda w: (-words[w], w))

    def fill(self, items: Sequence[tuple[MaskedText, str]]) -> list[TokenSeq]:
        outputs = []
        for masked, style in items:
            tokens: list[str] = []
            for seg in masked.segments:
                tokens.append(self._top_word(style) if seg is None else seg)
            outputs.append(TokenSeq.from_tokens(tokens))
        return outputs


class AntonymGenerator:
    """Rewrites the text embedded in a prompt through a fixed antonym table.

    Rewrite prompts get the substitution; refine prompts are echoed unchanged
    (a semantics-preserving paraphrase, reduced to identity at mock scale);
    demonstration-style prompts get the substitution applied to the final query.
    A single table entry may expand one word into several.
    """

    def __init__(self, table: Mapping[str, str] | None = None):
        self.table = dict(DEFAULT_ANTONYM_TABLE if table is None else table)

    def _substitute(self, text: str) -> str:
        out: list[str] = []
        for tok in tokenize(text).tokens:
            replacement = self.table.get(tok.lower())
            if replacement is None:
                out.append(tok)
            else:
                out.extend(replacement.split())
        return join_tokens(out)

    def _complete(self, prompt: str) -> str:
        rewrite = _REWRITE_RE.match(prompt)
        if rewrite:
            return self._substitute(rewrite.group(2))
        if prompt.startswith(_REFINE_PREFIX):
            return prompt[len(_REFINE_PREFIX):]
        markers = list(_ICL_MARKER_RE.finditer(prompt))
        if len(markers) >= 2 and prompt.rstrip().endswith(markers[-1].group(0)):
            query = prompt[markers[-2].end() : markers[-1].start()].strip()
            query = query[:-1].strip() if query.endswith(".") else query
            return self._substitute(query)
        return self._substitute(prompt)

    def generate(self, prompts: Sequence[str], params: GenerationParams) -> list[str]:
        return [self._complete(p) for p in prompts]


class HashingEmbedder:
    """Feature-hashing bag of lowercased tokens, L2-normalized. Fixed dimension."""

    def __init__(self, dim: int = 64):
        if dim < 1:
            raise ValueError(f"embedding dimension must be positive, got {dim}")
        self.dim = dim

    def bucket(self, token: str) -> int:
        return zlib.crc32(token.lower().encode("utf-8")) % self.dim

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        vectors = []
        for text in texts:
            vec = [0.0] * self.dim
            for tok in tokenize(text).tokens:
                vec[self.bucket(tok)] += 1.0
            norm = math.sqrt(sum(v * v for v in vec))
            if norm > 0:
                vec = [v / norm for v in vec]
            vectors.append(vec)
        return vectors


class UnigramPerplexity:
    """Add-one-smoothed unigram language model fitted on a supplied corpus."""

    def __init__(self, corpus_texts: Sequence[str]):
        if not corpus_texts:
            raise ValueError("unigram scorer needs a non-empty fitting corpus")
        self.counts: dict[str, int] = {}
        total = 0
        for text in corpus_texts:
            for tok in tokenize(text).tokens:
                key = tok.lower()
                self.counts[key] = self.counts.get(key, 0) + 1
                total += 1
        self.total = total
        self.vocab_size = len(self.counts)

    def _prob(self, token: str) -> float:
        return (self.counts.get(token.lower(), 0) + 1.0) / (self.total + self.vocab_size)

    def perplexity(self, texts: Sequence[str]) -> list[float]:
        values = []
        for text in texts:
            tokens = tokenize(text).tokens
            if not tokens:
                values.append(1.0)
                continue
            log_sum = sum(math.log(self._prob(tok)) for tok in tokens)
            values.append(math.exp(-log_sum / len(tokens)))
        return values


class LabelledPair(Protocol):
    source: TokenSeq
    labels: tuple[int, ...] | None


class MockMaskPredictor:
    """Count-based mask predictor trained on (source, mask-label) pairs.

    The per-word mask probability is a Laplace-smoothed ratio
    ``(#times labeled 1 + L) / (#occurrences + 2L)`` with ``L = 1``; unseen
    words sit at the uninformative 0.5. Probabilities are consumed directly
    (no rescaling) when this predictor drives masking.
    """

    SMOOTHING = 1.0

    def __init__(self, ones: Mapping[str, int], totals: Mapping[str, int]):
        self._ones = dict(ones)
        self._totals = dict(totals)

    def score(self, word: str) -> float:
        key = word.lower()
        lam = self.SMOOTHING
        return (self._ones.get(key, 0) + lam) / (self._totals.get(key, 0) + 2 * lam)

    def token_probs(self, seq: TokenSeq) -> list[float]:
        return [self.score(tok) for tok in seq.tokens]


def train_mock_mask_predictor(data: Iterable[LabelledPair]) -> MockMaskPredictor:
    """Fit the count-based predictor from labelled pairs (the desk-scale training loop)."""
    ones: dict[str, int] = {}
    totals: dict[str, int] = {}
    seen = 0
    for pair in data:
        seen += 1
        labels = pair.labels
        if labels is None:
            raise ValueError("training pair is missing mask labels")
        if len(labels) != len(pair.source.tokens):
            raise ValueError(
                f"label length {len(labels)} mismatches source length {len(pair.source.tokens)}"
            )
        for tok, label in zip(pair.source.tokens, labels):
            key = tok.lower()
            totals[key] = totals.get(key, 0) + 1
            if label:
                ones[key] = ones.get(key, 0) + 1
    if seen == 0:
        raise ValueError("cannot train a mask predictor from an empty dataset")
    return MockMaskPredictor(ones, totals)


@dataclass(frozen=True)
class EchoSlotFiller:
    """Test helper: fills each slot with a literal placeholder token."""

    placeholder: str = "[SLOT]"

    def fill(self, items: Sequence[tuple[MaskedText, str]]) -> list[TokenSeq]:
        return [
            TokenSeq.from_tokens(
                [self.placeholder if seg is None else seg for seg in masked.segments]
            )
            for masked, _style in items
        ]
