"""Model wrappers for the five served capabilities.

Each role owns its checkpoint and a lock: inference is serialized per model,
so concurrent HTTP requests queue instead of interleaving forward passes.
All batched entry points split internally at the configured batch size.
"""

from __future__ import annotations

import math
import threading
from typing import Iterable, Sequence

import torch
from transformers import (
    AutoModel,
    AutoModelForCausalLM,
    AutoModelForMaskedLM,
    AutoModelForSequenceClassification,
    AutoTokenizer,
)

from .config import ShimConfig

SLOT = "[SLOT]"


def _chunks(items: Sequence, size: int) -> Iterable[Sequence]:
    for start in range(0, len(items), size):
        yield items[start : start + size]


def _load_tokenizer(model_id: str):
    tokenizer = AutoTokenizer.from_pretrained(model_id)
    if not tokenizer.is_fast:
        raise RuntimeError(f"{model_id}: a fast tokenizer is required for word alignment")
    return tokenizer


class ClassifierRole:
    """Binary style classifier with attention-derived per-word scores.

    A word's score is the classification position's attention to it: last
    layer, averaged over heads, summed over the word's sub-tokens. Words are
    whitespace words of the request text, so the score vector length always
    equals the word count.
    """

    def __init__(self, config: ShimConfig):
        self.tokenizer = _load_tokenizer(config.classifier_model)
        self.model = AutoModelForSequenceClassification.from_pretrained(
            config.classifier_model, attn_implementation="eager"
        )
        if self.model.config.num_labels != 2:
            raise RuntimeError("the classifier checkpoint must have exactly two labels")
        self.model.eval().to(config.device)
        self.styles = tuple(config.classifier_styles)
        self.device = config.device
        self.max_length = config.max_length
        self.batch_size = config.max_batch_size
        self.lock = threading.Lock()

    def classify(self, texts: Sequence[str], styles: Sequence[str]) -> list[dict]:
        if set(styles) != set(self.styles):
            raise ValueError(
                f"this classifier serves styles {list(self.styles)}, requested {list(styles)}"
            )
        results: list[dict] = []
        with self.lock:
            for batch in _chunks(list(texts), self.batch_size):
                results.extend(self._classify_batch(batch))
        return results

    def _classify_batch(self, texts: Sequence[str]) -> list[dict]:
        word_lists = [text.split() for text in texts]
        encoded = self.tokenizer(
            [words or [self.tokenizer.unk_token] for words in word_lists],
            is_split_into_words=True,
            return_tensors="pt",
            padding=True,
            truncation=True,
            max_length=self.max_length,
        ).to(self.device)
        with torch.no_grad():
            output = self.model(**encoded, output_attentions=True)
        probs = torch.softmax(output.logits, dim=-1).cpu()
        # (batch, heads, seq, seq) -> head-mean rows of the classification position
        attention = output.attentions[-1].mean(dim=1)[:, 0, :].cpu()
        results = []
        for i, words in enumerate(word_lists):
            scores = [0.0] * len(words)
            for position, word_id in enumerate(encoded.word_ids(i)):
                if word_id is not None and words and word_id < len(words):
                    scores[word_id] += max(float(attention[i, position]), 0.0)
            results.append(
                {
                    "probs": {self.styles[0]: float(probs[i, 0]), self.styles[1]: float(probs[i, 1])},
                    "token_scores": [
                        {"token": tok, "score": score} for tok, score in zip(words, scores)
                    ],
                }
            )
        return results


class FillerRole:
    """Slot filling via masked-LM prediction, one token per slot.

    Every ``[SLOT]`` becomes the model's mask token and receives its argmax
    non-special prediction; the surrounding words are never regenerated, so
    the protocol's fill-preservation contract holds by construction.
    """

    def __init__(self, config: ShimConfig):
        self.models: dict[str, tuple] = {}
        for style, model_id in config.filler_model_ids().items():
            tokenizer = _load_tokenizer(model_id)
            model = AutoModelForMaskedLM.from_pretrained(model_id)
            model.eval().to(config.device)
            self.models[style] = (tokenizer, model)
        self.device = config.device
        self.max_length = config.max_length
        self.lock = threading.Lock()

    def _for_style(self, style: str) -> tuple:
        return self.models.get(style) or self.models["*"]

    def fill(self, items: Sequence[tuple[str, str]]) -> list[str]:
        with self.lock:
            return [self._fill_one(masked, style) for masked, style in items]

    def _fill_one(self, masked: str, style: str) -> str:
        try:
            tokenizer, model = self._for_style(style)
        except KeyError:
            raise ValueError(f"no filler model serves style {style!r}") from None
        words = masked.split()
        if SLOT not in words:
            return masked
        masked_words = [tokenizer.mask_token if w == SLOT else w for w in words]
        encoded = tokenizer(
            [masked_words],
            is_split_into_words=True,
            return_tensors="pt",
            truncation=True,
            max_length=self.max_length,
        ).to(self.device)
        with torch.no_grad():
            logits = model(**encoded).logits[0]
        mask_positions = (
            (encoded["input_ids"][0] == tokenizer.mask_token_id).nonzero().flatten().tolist()
        )
        special = set(tokenizer.all_special_ids)
        fills = []
        for position in mask_positions:
            ranked = torch.argsort(logits[position], descending=True).tolist()
            choice = next((t for t in ranked if t not in special), tokenizer.unk_token_id)
            decoded = tokenizer.decode([choice]).strip().replace(" ", "")
            fills.append(decoded or tokenizer.unk_token or "[UNK]")
        out: list[str] = []
        fill_iter = iter(fills)
        for word in words:
            if word == SLOT:
                # A truncated-away slot still needs one token on the wire.
                out.append(next(fill_iter, "[UNK]"))
            else:
                out.append(word)
        return " ".join(out)


class GeneratorRole:
    """Causal-LM completion. Temperature 0 decodes greedily (run-to-run identical)."""

    def __init__(self, config: ShimConfig):
        self.tokenizer = _load_tokenizer(config.generator_model)
        self.model = AutoModelForCausalLM.from_pretrained(config.generator_model)
        self.model.eval().to(config.device)
        self.device = config.device
        self.max_length = config.max_length
        self.lock = threading.Lock()

    def generate(self, prompts: Sequence[str], temperature: float, max_tokens: int) -> list[str]:
        with self.lock:
            return [self._generate_one(p, temperature, max_tokens) for p in prompts]

    def _generate_one(self, prompt: str, temperature: float, max_tokens: int) -> str:
        encoded = self.tokenizer(
            prompt, return_tensors="pt", truncation=True, max_length=self.max_length
        ).to(self.device)
        pad_id = self.tokenizer.pad_token_id
        if pad_id is None:
            pad_id = self.tokenizer.eos_token_id
        # The first generated token must be real text; an immediate EOS/PAD
        # would decode to an empty completion, which the protocol forbids.
        first_step_bans = sorted(set(self.tokenizer.all_special_ids))
        kwargs = dict(
            max_new_tokens=max_tokens,
            min_new_tokens=1,
            pad_token_id=pad_id,
            begin_suppress_tokens=first_step_bans or None,
        )
        if temperature > 0:
            kwargs.update(do_sample=True, temperature=temperature)
        else:
            kwargs.update(do_sample=False)
        with torch.no_grad():
            output = self.model.generate(**encoded, **kwargs)
        completion_ids = output[0][encoded["input_ids"].shape[1] :]
        return self.tokenizer.decode(completion_ids, skip_special_tokens=True).strip()


class EmbedderRole:
    """Sentence vectors: the encoder's final hidden state at the first position,
    L2-normalized. Dimension is the model's hidden size, constant per checkpoint."""

    def __init__(self, config: ShimConfig):
        self.tokenizer = _load_tokenizer(config.embedder_model)
        self.model = AutoModel.from_pretrained(config.embedder_model)
        self.model.eval().to(config.device)
        self.device = config.device
        self.max_length = config.max_length
        self.batch_size = config.max_batch_size
        self.lock = threading.Lock()

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        vectors: list[list[float]] = []
        with self.lock:
            for batch in _chunks(list(texts), self.batch_size):
                encoded = self.tokenizer(
                    list(batch),
                    return_tensors="pt",
                    padding=True,
                    truncation=True,
                    max_length=self.max_length,
                ).to(self.device)
                with torch.no_grad():
                    hidden = self.model(**encoded).last_hidden_state[:, 0, :]
                normalized = torch.nn.functional.normalize(hidden, dim=-1).cpu()
                vectors.extend(row.tolist() for row in normalized)
        return vectors


class PerplexityRole:
    """exp(mean next-token negative log-likelihood) under a causal LM."""

    def __init__(self, config: ShimConfig):
        self.tokenizer = _load_tokenizer(config.ppl_model)
        self.model = AutoModelForCausalLM.from_pretrained(config.ppl_model)
        self.model.eval().to(config.device)
        self.device = config.device
        self.max_length = config.max_length
        self.lock = threading.Lock()

    def perplexity(self, texts: Sequence[str]) -> list[float]:
        with self.lock:
            return [self._score_one(text) for text in texts]

    def _score_one(self, text: str) -> float:
        ids = self.tokenizer(
            text, return_tensors="pt", truncation=True, max_length=self.max_length - 1
        )["input_ids"]
        bos = self.tokenizer.bos_token_id
        if bos is None:
            bos = self.tokenizer.eos_token_id
        if bos is not None:
            ids = torch.cat([torch.tensor([[bos]]), ids], dim=1)
        if ids.shape[1] < 2:
            return 1.0
        ids = ids.to(self.device)
        with torch.no_grad():
            loss = self.model(input_ids=ids, labels=ids).loss
        return max(float(math.exp(loss.item())), 1.0)


class RoleSet:
    """All five roles, loaded eagerly so a broken checkpoint refuses startup."""

    def __init__(self, config: ShimConfig):
        self.config = config
        self.classifier = ClassifierRole(config)
        self.filler = FillerRole(config)
        self.generator = GeneratorRole(config)
        self.embedder = EmbedderRole(config)
        self.ppl = PerplexityRole(config)
