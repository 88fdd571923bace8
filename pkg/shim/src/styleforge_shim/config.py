"""Shim configuration: one pretrained checkpoint per served role."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping


@dataclass(frozen=True)
class ShimConfig:
    """Checkpoint identifiers (hub ids or local paths) for the five roles.

    ``filler_models`` may map target styles to separate checkpoints; a single
    string serves every style. ``classifier_styles`` fixes the label order of
    the sequence classifier (label 0 first).
    """

    classifier_model: str
    filler_models: str | Mapping[str, str]
    generator_model: str
    embedder_model: str
    ppl_model: str
    classifier_styles: tuple[str, str] = ("negative", "positive")
    device: str = "cpu"
    port: int = 8601
    max_batch_size: int = 16
    max_length: int = 256

    def __post_init__(self) -> None:
        if self.max_batch_size < 1:
            raise ValueError("max_batch_size must be >= 1")
        if len(self.classifier_styles) != 2:
            raise ValueError("classifier_styles must name exactly two styles")

    def filler_model_for(self, style: str) -> str:
        if isinstance(self.filler_models, str):
            return self.filler_models
        try:
            return self.filler_models[style]
        except KeyError:
            raise ValueError(f"no filler checkpoint configured for style {style!r}") from None

    def filler_model_ids(self) -> dict[str, str]:
        if isinstance(self.filler_models, str):
            return {"*": self.filler_models}
        return dict(self.filler_models)


def load_shim_config(path: str | Path) -> ShimConfig:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    known = {
        "classifier_model", "filler_models", "generator_model", "embedder_model",
        "ppl_model", "classifier_styles", "device", "port", "max_batch_size", "max_length",
    }
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown shim config keys: {sorted(unknown)}")
    if "classifier_styles" in obj:
        obj["classifier_styles"] = tuple(obj["classifier_styles"])
    return ShimConfig(**obj)
