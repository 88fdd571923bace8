"""The six transfer methods: two baselines and the four interactions between
attention masking and LLM prompting, plus distillation synthesis and
in-context-learning demonstration selection."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .align import FillExample, ParallelPair, build_signal_pair
from .backends.base import BackendSet, GenerationParams
from .backends.mocks import MockMaskPredictor, train_mock_mask_predictor
from .masking import MaskingConfig, am_transfer, mask_and_fill
from .textcore import Corpus, TokenSeq, TransferDirection, detokenize, tokenize

METHODS = ("am", "llm", "prompt-then-am", "am-then-prompt", "llm-as-signal", "am-as-demo")


@dataclass(frozen=True)
class Demonstration:
    source_text: str
    transferred_text: str
    similarity: float


@dataclass(frozen=True)
class StrategyConfig:
    method: str
    masking: MaskingConfig = MaskingConfig()
    k: int = 4
    gen: GenerationParams = GenerationParams()
    icl_style_word: str = "sentiment"
    signal_n: int = 500
    seed: int = 0

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


def build_rewrite_prompt(text: str, target: str) -> str:
    return f"Rewrite the following text in a {target} manner: {text}"


def build_refine_prompt(text: str) -> str:
    return f"Refine the following text without changing its semantic: {text}"


def _clean_completion(text: str) -> str:
    cleaned = text.strip()
    while len(cleaned) >= 2 and cleaned[0] == cleaned[-1] and cleaned[0] in "\"'":
        cleaned = cleaned[1:-1].strip()
    return cleaned


def llm_transfer(
    seq: TokenSeq,
    direction: TransferDirection,
    backends: BackendSet,
    gen: GenerationParams = GenerationParams(),
) -> TokenSeq:
    """One-shot rewrite through the generator backend."""
    prompt = build_rewrite_prompt(detokenize(seq), direction.target)
    completion = backends.generate([prompt], gen)[0]
    return tokenize(_clean_completion(completion))


def prompt_then_am(
    seq: TokenSeq,
    direction: TransferDirection,
    cfg: StrategyConfig,
    backends: BackendSet,
) -> TokenSeq:
    """LLM rewrite first, then attention-mask revision of the intermediate.

    Masking runs in aggressiveness mode so that 0 keeps the LLM output
    byte-identical and 1 re-predicts every positively scored token.
    """
    masking = replace(cfg.masking, alpha_mode="aggressiveness")
    intermediate = llm_transfer(seq, direction, backends, cfg.gen)
    return am_transfer(intermediate, direction, masking, backends)


def am_then_prompt(
    seq: TokenSeq,
    direction: TransferDirection,
    cfg: StrategyConfig,
    backends: BackendSet,
) -> TokenSeq:
    """Attention-mask transfer first, then a semantics-preserving LLM refinement."""
    intermediate = am_transfer(seq, direction, cfg.masking, backends)
    prompt = build_refine_prompt(detokenize(intermediate))
    completion = backends.generate([prompt], cfg.gen)[0]
    return tokenize(_clean_completion(completion))


def synthesize_signal_dataset(
    corpus: Corpus,
    direction: TransferDirection,
    n: int,
    backends: BackendSet,
    seed: int,
    gen: GenerationParams = GenerationParams(),
) -> tuple[list[ParallelPair], list[FillExample]]:
    """Sample ``n`` sentences, rewrite each with the generator, and align the
    pairs into mask supervision (D1) and fill examples (D2).

    Sampling is seeded and without replacement, so a fixed seed reproduces
    both datasets byte-for-byte.
    """
    if n > len(corpus):
        raise ValueError(f"cannot sample {n} items from a corpus of {len(corpus)}")
    rng = random.Random(seed)
    indices = rng.sample(range(len(corpus)), n)
    d1: list[ParallelPair] = []
    d2: list[FillExample] = []
    for idx in indices:
        src = corpus[idx]
        out = llm_transfer(src, direction, backends, gen)
        pair, example = build_signal_pair(src, out, direction)
        d1.append(pair)
        d2.append(example)
    return d1, d2


def train_signal_predictor(
    corpus: Corpus,
    direction: TransferDirection,
    n: int,
    backends: BackendSet,
    seed: int,
    gen: GenerationParams = GenerationParams(),
) -> MockMaskPredictor:
    d1, _ = synthesize_signal_dataset(corpus, direction, n, backends, seed, gen)
    return train_mock_mask_predictor(d1)


def signal_transfer(
    seq: TokenSeq,
    direction: TransferDirection,
    predictor: MockMaskPredictor,
    masking: MaskingConfig,
    backends: BackendSet,
) -> TokenSeq:
    """Transfer using a trained mask predictor: its per-token probabilities are
    thresholded directly (no per-sentence rescaling) and the slots filled."""
    if not seq.tokens:
        return seq
    return mask_and_fill(seq, predictor.token_probs(seq), direction, masking, backends)


def _cosine(u: Sequence[float], v: Sequence[float]) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0 or nv == 0:
        return 0.0
    return dot / (nu * nv)


class DemonstrationPool:
    """Demonstration source for one (corpus, direction) pair.

    Corpus embeddings are computed once; attention-mask transfers of selected
    sentences are cached, so repeated queries stay cheap.
    """

    def __init__(
        self,
        corpus: Corpus,
        direction: TransferDirection,
        backends: BackendSet,
        masking: MaskingConfig = MaskingConfig(),
    ):
        if len(corpus) == 0:
            raise ValueError("demonstration pool needs a non-empty corpus")
        self.corpus = corpus
        self.direction = direction
        self.backends = backends
        self.masking = masking
        self._texts = corpus.texts()
        self._vectors: list[list[float]] | None = None
        self._transferred: dict[int, str] = {}

    def _corpus_vectors(self) -> list[list[float]]:
        if self._vectors is None:
            self._vectors = self.backends.embed(self._texts)
        return self._vectors

    def _transfer(self, idx: int) -> str:
        if idx not in self._transferred:
            out = am_transfer(self.corpus[idx], self.direction, self.masking, self.backends)
            self._transferred[idx] = detokenize(out)
        return self._transferred[idx]

    def select(self, query: str, k: int) -> list[Demonstration]:
        if k > len(self.corpus):
            raise ValueError(f"k={k} exceeds the corpus size {len(self.corpus)}")
        query_vec = self.backends.embed([query])[0]
        sims = [_cosine(query_vec, vec) for vec in self._corpus_vectors()]
        order = sorted(range(len(sims)), key=lambda i: (-sims[i], i))[:k]
        return [
            Demonstration(
                source_text=self._texts[i],
                transferred_text=self._transfer(i),
                similarity=sims[i],
            )
            for i in order
        ]


def select_demonstrations(
    query: str,
    corpus: Corpus,
    direction: TransferDirection,
    k: int,
    backends: BackendSet,
    masking: MaskingConfig = MaskingConfig(),
) -> list[Demonstration]:
    """Top-k cosine-similar corpus sentences, each transferred to form a demo pair."""
    return DemonstrationPool(corpus, direction, backends, masking).select(query, k)


def build_icl_prompt(
    demos: Sequence[Demonstration],
    query: str,
    direction: TransferDirection,
    style_word: str = "sentiment",
) -> str:
    if not demos:
        raise ValueError("in-context prompt needs at least one demonstration")
    sx, sy = direction.source, direction.target
    parts = [
        f'"{sx} Text": {d.source_text}. "{sy} Text": {d.transferred_text}. ' for d in demos
    ]
    parts.append(f"Please rewrite the following text into a {sy} {style_word}. ")
    parts.append(f'"{sx} Text": {query}. "{sy} Text":')
    return "".join(parts)


def am_as_demo_transfer(
    seq: TokenSeq,
    direction: TransferDirection,
    cfg: StrategyConfig,
    backends: BackendSet,
    pool: DemonstrationPool,
) -> TokenSeq:
    """Prompt the generator with attention-mask-transferred nearest neighbours
    as in-context demonstrations and extract its completion."""
    query = detokenize(seq)
    demos = pool.select(query, cfg.k)
    prompt = build_icl_prompt(demos, query, direction, cfg.icl_style_word)
    completion = backends.generate([prompt], cfg.gen)[0]
    marker = f'"{direction.target} Text":'
    if marker in completion:
        completion = completion.rsplit(marker, 1)[1]
    completion = _clean_completion(completion)
    if not completion:
        raise ValueError("could not extract a prediction from the completion")
    return tokenize(completion)


def write_jsonl_datasets(
    d1: Iterable[ParallelPair],
    d2: Iterable[FillExample],
    d1_path: str | Path,
    d2_path: str | Path,
) -> None:
    """Serialize both distillation datasets, one JSON object per line."""
    with open(d1_path, "w", encoding="utf-8") as fh:
        for pair in d1:
            fh.write(
                json.dumps(
                    {
                        "source": detokenize(pair.source),
                        "labels": list(pair.labels or ()),
                        "direction": str(pair.direction),
                    }
                )
                + "\n"
            )
    with open(d2_path, "w", encoding="utf-8") as fh:
        for example in d2:
            fh.write(
                json.dumps(
                    {
                        "masked": example.masked.rendered,
                        "target": detokenize(example.target),
                        "target_style": example.target_style,
                    }
                )
                + "\n"
            )


def read_mask_signal_dataset(path: str | Path) -> list[ParallelPair]:
    """Parse a D1 JSONL file back into labelled pairs (targets are not stored)."""
    pairs = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        source = tokenize(obj["source"])
        pairs.append(
            ParallelPair(
                source=source,
                target=source,
                labels=tuple(int(v) for v in obj["labels"]),
                direction=TransferDirection.parse(obj["direction"]),
            )
        )
    return pairs
