"""Batch experiment orchestration: run a method over a test set, evaluate,
synthesize distillation data, and sweep the masking aggressiveness."""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .backends.base import BackendSet
from .datasets import DatasetSpec, load_corpus, load_test_set
from .masking import MaskingConfig, am_transfer, apply_mask, predict_mask, scale_scores
from .metrics import MetricsReport, evaluate_run
from .strategies import (
    DemonstrationPool,
    StrategyConfig,
    am_as_demo_transfer,
    am_then_prompt,
    llm_transfer,
    prompt_then_am,
    signal_transfer,
    synthesize_signal_dataset,
    train_signal_predictor,
    write_jsonl_datasets,
)
from .textcore import Corpus, TokenSeq, TransferDirection, detokenize


@dataclass
class ExperimentConfig:
    dataset: DatasetSpec
    direction: TransferDirection
    strategy: StrategyConfig
    backends: BackendSet
    parallelism: int = 1
    seed: int = 0
    out_dir: Path | None = None
    limit: int | None = None

    def __post_init__(self) -> None:
        if self.parallelism < 1:
            raise ValueError(f"parallelism must be >= 1, got {self.parallelism}")


def map_ordered(
    fn: Callable[[TokenSeq], TokenSeq], items: Sequence[TokenSeq], parallelism: int
) -> list[TokenSeq]:
    """Apply ``fn`` per sentence, preserving input order regardless of completion order."""
    if parallelism <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, items))


def build_transfer_fn(config: ExperimentConfig) -> Callable[[TokenSeq], TokenSeq]:
    """Resolve a method name into a per-sentence transfer callable.

    Method-level setup (demonstration pool embedding, distillation + predictor
    training for the signal route) happens here, once per run.
    """
    cfg = config.strategy
    direction = config.direction
    backends = config.backends
    method = cfg.method
    if method == "am":
        return lambda seq: am_transfer(seq, direction, cfg.masking, backends)
    if method == "llm":
        return lambda seq: llm_transfer(seq, direction, backends, cfg.gen)
    if method == "prompt-then-am":
        return lambda seq: prompt_then_am(seq, direction, cfg, backends)
    if method == "am-then-prompt":
        return lambda seq: am_then_prompt(seq, direction, cfg, backends)
    if method == "llm-as-signal":
        corpus = load_corpus(config.dataset.train_files[direction.source], direction.source)
        predictor = train_signal_predictor(
            corpus, direction, min(cfg.signal_n, len(corpus)), backends, config.seed, cfg.gen
        )
        return lambda seq: signal_transfer(seq, direction, predictor, cfg.masking, backends)
    if method == "am-as-demo":
        corpus = load_corpus(config.dataset.train_files[direction.source], direction.source)
        pool = DemonstrationPool(corpus, direction, backends, cfg.masking)
        return lambda seq: am_as_demo_transfer(seq, direction, cfg, backends, pool)
    raise ValueError(f"unknown method {method!r}")


def _manifest(config: ExperimentConfig, extra: dict) -> dict:
    cfg = config.strategy
    return {
        "styleforge_version": __version__,
        "dataset": config.dataset.name,
        "direction": str(config.direction),
        "method": cfg.method,
        "masking": {
            "tau": cfg.masking.tau,
            "alpha_mode": cfg.masking.alpha_mode,
            "effective_tau": cfg.masking.effective_tau,
        },
        "k": cfg.k,
        "generation": {"temperature": cfg.gen.temperature, "max_tokens": cfg.gen.max_tokens},
        "signal_n": cfg.signal_n,
        "seed": config.seed,
        "parallelism": config.parallelism,
        "backends": dict(config.backends.kinds),
        **extra,
    }


def run_transfer(config: ExperimentConfig) -> list[TokenSeq]:
    """Transfer every test sentence; write outputs.txt and manifest.json when out_dir is set."""
    started = time.perf_counter()
    sources, _refs = load_test_set(config.dataset, config.direction)
    sentences = sources.sentences[: config.limit] if config.limit else sources.sentences
    transfer = build_transfer_fn(config)
    outputs = map_ordered(transfer, sentences, config.parallelism)
    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        out_file = config.out_dir / "outputs.txt"
        out_file.write_text(
            "".join(detokenize(seq) + "\n" for seq in outputs), encoding="utf-8"
        )
        manifest = _manifest(
            config,
            {"sentences": len(outputs), "elapsed_s": round(time.perf_counter() - started, 3)},
        )
        (config.out_dir / "manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
        )
    return outputs


def run_evaluate(
    hyps: Sequence[TokenSeq],
    sources: Sequence[TokenSeq],
    direction: TransferDirection,
    backends: BackendSet,
    refs: Sequence[TokenSeq] | None = None,
    out_dir: Path | None = None,
    label: str = "run",
) -> MetricsReport:
    report = evaluate_run(hyps, sources, direction, backends, refs)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.json").write_text(
            json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
        from .metrics import markdown_table

        (out_dir / "report.md").write_text(
            markdown_table([(label, report)]) + "\n", encoding="utf-8"
        )
    return report


def run_distill(
    config: ExperimentConfig, n: int
) -> tuple[Path, Path]:
    """Synthesize the two distillation datasets and write them as JSONL files."""
    if config.out_dir is None:
        raise ValueError("distillation needs an output directory")
    corpus = load_corpus(
        config.dataset.train_files[config.direction.source], config.direction.source
    )
    d1, d2 = synthesize_signal_dataset(
        corpus, config.direction, n, config.backends, config.seed, config.strategy.gen
    )
    config.out_dir.mkdir(parents=True, exist_ok=True)
    d1_path = config.out_dir / "d1.jsonl"
    d2_path = config.out_dir / "d2.jsonl"
    write_jsonl_datasets(d1, d2, d1_path, d2_path)
    manifest = _manifest(config, {"n": n, "d1": d1_path.name, "d2": d2_path.name})
    (config.out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return d1_path, d2_path


SWEEP_COLUMNS = ("alpha", "acc", "r_sbleu", "s_sbleu", "ppl", "mean")


def run_sweep_alpha(
    config: ExperimentConfig,
    grid: Sequence[float],
    emit_mask_counts: bool = False,
) -> list[dict[str, object]]:
    """Evaluate prompt-then-am across an aggressiveness grid.

    The LLM intermediates and their token scores do not depend on the
    aggressiveness value, so they are computed once and only the threshold,
    fill, and evaluation stages rerun per grid point. At 0 the row coincides
    with a plain LLM-baseline evaluation of the same inputs.
    """
    if not grid:
        raise ValueError("the sweep grid must not be empty")
    if list(grid) != sorted(grid):
        raise ValueError("the sweep grid must be sorted ascending")
    if any(not 0.0 <= a <= 1.0 for a in grid):
        raise ValueError("grid values must lie in [0, 1]")
    if config.strategy.method != "prompt-then-am":
        raise ValueError("the aggressiveness sweep applies to prompt-then-am only")

    cfg = config.strategy
    backends = config.backends
    direction = config.direction
    sources, refs = load_test_set(config.dataset, config.direction)
    sentences = sources.sentences[: config.limit] if config.limit else sources.sentences
    if config.limit and refs is not None:
        refs = Corpus(refs.style, refs.sentences[: config.limit], refs.origin)

    intermediates = map_ordered(
        lambda seq: llm_transfer(seq, direction, backends, cfg.gen),
        sentences,
        config.parallelism,
    )
    score_rows = []
    for seq, result in zip(
        intermediates, backends.classify(intermediates, direction.styles)
    ):
        if seq.tokens:
            score_rows.append(scale_scores([ts.score for ts in result.token_scores]))
        else:
            score_rows.append([])

    rows: list[dict[str, object]] = []
    for alpha in grid:
        masking = MaskingConfig(tau=alpha, alpha_mode="aggressiveness")
        outputs: list[TokenSeq] = []
        masked_total = 0
        for seq, scores in zip(intermediates, score_rows):
            if not seq.tokens:
                outputs.append(seq)
                continue
            labels = predict_mask(seq, scores, masking)
            masked_total += sum(labels)
            if not any(labels):
                outputs.append(seq)
            else:
                outputs.append(
                    backends.fill([(apply_mask(seq, labels), direction.target)])[0]
                )
        report = evaluate_run(
            outputs, sentences, direction, backends, refs.sentences if refs else None
        )
        row: dict[str, object] = {
            "alpha": alpha,
            "acc": report.acc,
            "r_sbleu": report.r_sbleu,
            "s_sbleu": report.s_sbleu,
            "ppl": report.ppl,
            "mean": report.mean,
        }
        if emit_mask_counts:
            row["masked_tokens"] = masked_total
        rows.append(row)

    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        columns = list(SWEEP_COLUMNS) + (["masked_tokens"] if emit_mask_counts else [])
        with open(config.out_dir / "sweep.csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(["" if row.get(c) is None else row.get(c) for c in columns])
        manifest = _manifest(
            config, {"grid": list(grid), "emit_mask_counts": emit_mask_counts}
        )
        (config.out_dir / "manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
        )
    return rows


def llm_baseline_row(config: ExperimentConfig) -> MetricsReport:
    """Plain LLM-based evaluation over the same inputs as a sweep (its alpha-0 twin)."""
    baseline = replace(config, strategy=replace(config.strategy, method="llm"))
    sources, refs = load_test_set(config.dataset, config.direction)
    sentences = sources.sentences[: config.limit] if config.limit else sources.sentences
    ref_seqs = refs.sentences[: config.limit or len(refs)] if refs else None
    outputs = map_ordered(
        build_transfer_fn(baseline), sentences, config.parallelism
    )
    return evaluate_run(outputs, sentences, config.direction, config.backends, ref_seqs)
