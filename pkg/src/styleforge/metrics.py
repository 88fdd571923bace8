"""Evaluation metrics: style accuracy, corpus BLEU, perplexity aggregation,
and the composite Mean score.

BLEU is corpus-level BLEU-4 with clipped modified n-gram precisions pooled
over the whole corpus, a brevity penalty of ``min(1, e^(1 - r/c))``, lowercase
comparison, and no smoothing: any pooled zero precision zeroes the score.
The Mean column is the arithmetic average of accuracy, self-BLEU, and the
scaled perplexity ``100 * e^(-0.015 * PPL)``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .backends.base import BackendSet
from .textcore import TokenSeq, TransferDirection, detokenize

MAX_NGRAM_ORDER = 4


@dataclass(frozen=True)
class MetricsReport:
    """One run's metric row. ``r_sbleu`` is None when no references exist."""

    acc: float
    s_sbleu: float
    ppl: float
    scaled_ppl: float
    mean: float
    r_sbleu: float | None = None

    def to_dict(self) -> dict:
        return {
            "acc": self.acc,
            "r_sbleu": self.r_sbleu,
            "s_sbleu": self.s_sbleu,
            "ppl": self.ppl,
            "scaled_ppl": self.scaled_ppl,
            "mean": self.mean,
        }

    def markdown_row(self, label: str = "run") -> str:
        r_cell = "-" if self.r_sbleu is None else f"{self.r_sbleu:.1f}"
        return (
            f"| {label} | {self.acc:.1f} | {r_cell} | {self.s_sbleu:.1f} "
            f"| {self.ppl:.1f} | {self.mean:.1f} |"
        )


MARKDOWN_HEADER = "| method | ACC | r-sBLEU | s-sBLEU | PPL | Mean |\n|---|---|---|---|---|---|"


def markdown_table(rows: Sequence[tuple[str, MetricsReport]]) -> str:
    lines = [MARKDOWN_HEADER]
    lines.extend(report.markdown_row(label) for label, report in rows)
    return "\n".join(lines)


def scaled_ppl(ppl: float) -> float:
    """Map perplexity onto a 0-100 higher-is-better scale."""
    if not math.isfinite(ppl):
        raise ValueError(f"perplexity must be finite, got {ppl}")
    return 100.0 * math.exp(-0.015 * ppl)


def compose_mean(acc: float, s_sbleu: float, ppl: float) -> float:
    """Composite score: arithmetic mean of accuracy, self-BLEU, and scaled perplexity."""
    for name, value in (("acc", acc), ("s_sbleu", s_sbleu), ("ppl", ppl)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
    return (acc + s_sbleu + scaled_ppl(ppl)) / 3.0


def style_accuracy(
    outputs: Sequence[TokenSeq], direction: TransferDirection, backends: BackendSet
) -> float:
    """Percentage of outputs the judge assigns to the target style (probability > 0.5)."""
    if not outputs:
        raise ValueError("style accuracy needs a non-empty batch")
    results = backends.classify(outputs, direction.styles)
    hits = sum(1 for res in results if res.probs[direction.target] > 0.5)
    return 100.0 * hits / len(outputs)


# mteval-13a-style re-tokenization, for parity with external scorers.
_13A_RULES = (
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),
    (re.compile(r"([0-9])(-)"), r"\1 \2 "),
)


def tokenize_13a(text: str) -> list[str]:
    out = text
    for pattern, repl in _13A_RULES:
        out = pattern.sub(repl, out)
    return out.split()


def _bleu_tokens(seq: TokenSeq, retokenize: str | None) -> list[str]:
    if retokenize is None:
        return [tok.lower() for tok in seq.tokens]
    if retokenize == "13a":
        return [tok.lower() for tok in tokenize_13a(detokenize(seq))]
    raise ValueError(f"unknown re-tokenization {retokenize!r}")


def corpus_bleu(
    hyps: Sequence[TokenSeq],
    refs: Sequence[TokenSeq],
    retokenize: str | None = None,
) -> float:
    """Corpus-level BLEU-4 in [0, 100] against a single reference per hypothesis."""
    if len(hyps) != len(refs):
        raise ValueError(f"hypothesis/reference length mismatch: {len(hyps)} vs {len(refs)}")
    if not hyps:
        raise ValueError("corpus BLEU needs a non-empty corpus")
    matches = [0] * MAX_NGRAM_ORDER
    totals = [0] * MAX_NGRAM_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        h = _bleu_tokens(hyp, retokenize)
        r = _bleu_tokens(ref, retokenize)
        hyp_len += len(h)
        ref_len += len(r)
        for order in range(1, MAX_NGRAM_ORDER + 1):
            h_counts = Counter(tuple(h[i : i + order]) for i in range(len(h) - order + 1))
            r_counts = Counter(tuple(r[i : i + order]) for i in range(len(r) - order + 1))
            matches[order - 1] += sum(min(c, r_counts[g]) for g, c in h_counts.items())
            totals[order - 1] += max(len(h) - order + 1, 0)
    if hyp_len == 0:
        return 0.0
    precisions = [m / t if t else 0.0 for m, t in zip(matches, totals)]
    if any(p == 0.0 for p in precisions):
        return 0.0
    log_mean = sum(math.log(p) for p in precisions) / MAX_NGRAM_ORDER
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * math.exp(log_mean)


def evaluate_run(
    hyps: Sequence[TokenSeq],
    sources: Sequence[TokenSeq],
    direction: TransferDirection,
    backends: BackendSet,
    refs: Sequence[TokenSeq] | None = None,
) -> MetricsReport:
    """Compute the full metric row for one run (self-BLEU against the sources,
    reference BLEU only when references exist)."""
    if len(hyps) != len(sources):
        raise ValueError(f"hypothesis/source length mismatch: {len(hyps)} vs {len(sources)}")
    if refs is not None and len(refs) != len(hyps):
        raise ValueError(f"hypothesis/reference length mismatch: {len(hyps)} vs {len(refs)}")
    acc = style_accuracy(hyps, direction, backends)
    s_sbleu = corpus_bleu(hyps, sources)
    r_sbleu = corpus_bleu(hyps, refs) if refs is not None else None
    ppl_values = backends.perplexity([detokenize(h) for h in hyps])
    ppl = sum(ppl_values) / len(ppl_values)
    return MetricsReport(
        acc=acc,
        s_sbleu=s_sbleu,
        ppl=ppl,
        scaled_ppl=scaled_ppl(ppl),
        mean=compose_mean(acc, s_sbleu, ppl),
        r_sbleu=r_sbleu,
    )
