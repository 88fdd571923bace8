"""Mask prediction and slotted-text machinery for attention-mask style transfer.

A sentence flows through: classifier token scores -> per-sentence max scaling ->
thresholding into 0/1 mask labels -> slot merging -> target-style filling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .textcore import TokenSeq, TransferDirection

if TYPE_CHECKING:
    from .backends.base import BackendSet

SLOT = "[SLOT]"

# Aligned 0/1 vector over a TokenSeq; 1 marks a token to re-predict.
MaskLabels = tuple[int, ...]

ALPHA_MODES = ("direct", "aggressiveness")


@dataclass(frozen=True)
class MaskedText:
    """A token sequence with 1-labeled runs collapsed to slots (``None`` segments)."""

    segments: tuple[str | None, ...]

    def __post_init__(self) -> None:
        prev_slot = False
        for seg in self.segments:
            if seg is None:
                if prev_slot:
                    raise ValueError("adjacent slots must be merged")
                prev_slot = True
            else:
                if not seg or any(ch.isspace() for ch in seg):
                    raise ValueError(f"malformed segment token {seg!r}")
                prev_slot = False

    @property
    def rendered(self) -> str:
        return " ".join(SLOT if seg is None else seg for seg in self.segments)

    @property
    def slot_count(self) -> int:
        return sum(1 for seg in self.segments if seg is None)

    @property
    def kept_tokens(self) -> tuple[str, ...]:
        return tuple(seg for seg in self.segments if seg is not None)


@dataclass(frozen=True)
class MaskingConfig:
    """Threshold config.

    ``direct`` mode masks tokens whose scaled score exceeds ``tau``.
    ``aggressiveness`` mode reads ``tau`` as an aggressiveness knob: the
    effective threshold is ``1 - tau``, so 0 masks nothing and 1 masks every
    positively scored token.
    """

    tau: float = 0.5
    alpha_mode: str = "direct"

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau}")
        if self.alpha_mode not in ALPHA_MODES:
            raise ValueError(f"alpha_mode must be one of {ALPHA_MODES}, got {self.alpha_mode!r}")

    @property
    def effective_tau(self) -> float:
        return self.tau if self.alpha_mode == "direct" else 1.0 - self.tau


def scale_scores(raw: Sequence[float]) -> list[float]:
    """Max-normalize raw attention scores into [0, 1]; an all-zero row stays zero."""
    if len(raw) == 0:
        raise ValueError("cannot scale an empty score vector")
    if any(score < 0 for score in raw):
        raise ValueError("raw scores must be non-negative")
    top = max(raw)
    if top == 0:
        return [0.0] * len(raw)
    return [score / top for score in raw]


def predict_mask(seq: TokenSeq, scaled: Sequence[float], cfg: MaskingConfig) -> MaskLabels:
    """Threshold scaled scores into mask labels (strict ``>`` comparison)."""
    if len(scaled) != len(seq.tokens):
        raise ValueError(f"score/token length mismatch: {len(scaled)} vs {len(seq.tokens)}")
    if any(not 0.0 <= s <= 1.0 for s in scaled):
        raise ValueError("scaled scores must lie in [0, 1]")
    tau = cfg.effective_tau
    return tuple(1 if score > tau else 0 for score in scaled)


def apply_mask(seq: TokenSeq, labels: Sequence[int]) -> MaskedText:
    """Collapse 1-labeled runs into single slots; 0-labeled tokens pass through verbatim."""
    if len(labels) != len(seq.tokens):
        raise ValueError(f"label/token length mismatch: {len(labels)} vs {len(seq.tokens)}")
    segments: list[str | None] = []
    for tok, label in zip(seq.tokens, labels):
        if label not in (0, 1):
            raise ValueError(f"mask labels must be 0 or 1, got {label!r}")
        if label:
            if not segments or segments[-1] is not None:
                segments.append(None)
        else:
            segments.append(tok)
    return MaskedText(tuple(segments))


def masked_token_count(seq: TokenSeq, scaled: Sequence[float], cfg: MaskingConfig) -> int:
    return sum(predict_mask(seq, scaled, cfg))


def mask_and_fill(
    seq: TokenSeq,
    scores01: Sequence[float],
    direction: TransferDirection,
    cfg: MaskingConfig,
    backends: "BackendSet",
) -> TokenSeq:
    """Threshold + slot-merge + fill. ``scores01`` are already in [0, 1].

    Returns the input unchanged (no fill round-trip) when nothing is masked.
    """
    labels = predict_mask(seq, scores01, cfg)
    if not any(labels):
        return seq
    masked = apply_mask(seq, labels)
    return backends.fill([(masked, direction.target)])[0]


def am_transfer(
    seq: TokenSeq,
    direction: TransferDirection,
    cfg: MaskingConfig,
    backends: "BackendSet",
) -> TokenSeq:
    """Attention-mask transfer: classify, scale, threshold, merge slots, fill."""
    result = backends.classify([seq], direction.styles)[0]
    if not seq.tokens:
        return seq
    scaled = scale_scores([ts.score for ts in result.token_scores])
    return mask_and_fill(seq, scaled, direction, cfg, backends)
