"""Command-line surface.

Commands: transfer, evaluate, distill, demo-select, sweep-alpha.
Exit codes: 0 success, 1 runtime/backend failure, 2 usage or config error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .backends.base import BackendError, GenerationParams
from .backends.config import load_backends
from .datasets import (
    DatasetError,
    DatasetSpec,
    get_dataset,
    load_corpus,
    load_dataset_spec,
    toyvolt_backends_path,
)
from .harness import (
    ExperimentConfig,
    run_distill,
    run_evaluate,
    run_sweep_alpha,
    run_transfer,
)
from .masking import MaskingConfig
from .metrics import markdown_table
from .strategies import METHODS, StrategyConfig, select_demonstrations
from .textcore import TransferDirection

BACKENDS_ENV_VAR = "STYLEFORGE_BACKENDS"

# Per-method default threshold semantics: pipelines revising LLM output sweep
# an aggressiveness knob; the others threshold scaled scores directly.
DEFAULT_ALPHA_MODE = {
    "am": "direct",
    "llm": "direct",
    "prompt-then-am": "aggressiveness",
    "am-then-prompt": "direct",
    "llm-as-signal": "direct",
    "am-as-demo": "direct",
}


def _fail(exc: Exception) -> "click.ClickException":
    return click.ClickException(str(exc))


def _load_spec(dataset: str, dataset_spec: str | None, data_root: str | None) -> DatasetSpec:
    try:
        if dataset_spec:
            return load_dataset_spec(dataset_spec)
        return get_dataset(dataset, data_root)
    except (DatasetError, OSError, ValueError, KeyError) as exc:
        raise click.UsageError(str(exc)) from exc


def _resolve_backends(backends_path: str | None, dataset_name: str):
    path = backends_path
    if path is None:
        import os

        path = os.environ.get(BACKENDS_ENV_VAR)
    if path is None and dataset_name == "toyvolt":
        path = str(toyvolt_backends_path())
    if path is None:
        raise click.UsageError(
            f"no backend config: pass --backends or set {BACKENDS_ENV_VAR}"
        )
    try:
        return load_backends(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot load backend config {path}: {exc}") from exc


def common_options(fn):
    @click.option("--backends", "backends_path", type=click.Path(), default=None,
                  help=f"Backend config JSON (falls back to ${BACKENDS_ENV_VAR}).")
    @click.option("--seed", type=int, default=0, show_default=True)
    @click.option("--parallelism", type=click.IntRange(min=1), default=1, show_default=True)
    @click.option("--data-root", type=click.Path(), default=None,
                  help="Root directory holding non-bundled dataset files.")
    @click.option("--dataset-spec", type=click.Path(), default=None,
                  help="Explicit dataset spec JSON (overrides --dataset lookup).")
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapper


@click.group()
@click.version_option()
def cli() -> None:
    """Unsupervised text style transfer experiments."""


@cli.command()
@click.option("--method", type=click.Choice(METHODS), required=True)
@click.option("--dataset", default="toyvolt", show_default=True)
@click.option("--direction", "direction_text", required=True, help="source:target styles.")
@click.option("--alpha", type=click.FloatRange(0.0, 1.0), default=None,
              help="Masking threshold/aggressiveness (defaults to the dataset's value).")
@click.option("--alpha-mode", type=click.Choice(["direct", "aggressiveness"]), default=None,
              help="Override the method's default threshold semantics.")
@click.option("--k", type=click.IntRange(min=1), default=4, show_default=True,
              help="Demonstration count for am-as-demo.")
@click.option("--signal-n", type=click.IntRange(min=1), default=500, show_default=True,
              help="Pairs synthesized for llm-as-signal.")
@click.option("--temperature", type=float, default=0.0, show_default=True)
@click.option("--max-tokens", type=int, default=128, show_default=True)
@click.option("--limit", type=click.IntRange(min=1), default=None,
              help="Transfer only the first N test sentences.")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@common_options
def transfer(method, dataset, direction_text, alpha, alpha_mode, k, signal_n, temperature,
             max_tokens, limit, out_dir, backends_path, seed, parallelism, data_root,
             dataset_spec) -> None:
    """Run one method over a test set and write order-aligned outputs."""
    spec = _load_spec(dataset, dataset_spec, data_root)
    try:
        direction = spec.direction(direction_text)
    except (DatasetError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    backends = _resolve_backends(backends_path, spec.name)
    masking = MaskingConfig(
        tau=spec.default_tau if alpha is None else alpha,
        alpha_mode=alpha_mode or DEFAULT_ALPHA_MODE[method],
    )
    strategy = StrategyConfig(
        method=method,
        masking=masking,
        k=k,
        gen=GenerationParams(temperature=temperature, max_tokens=max_tokens),
        icl_style_word=spec.icl_style_word,
        signal_n=signal_n,
        seed=seed,
    )
    config = ExperimentConfig(
        dataset=spec, direction=direction, strategy=strategy, backends=backends,
        parallelism=parallelism, seed=seed, out_dir=Path(out_dir), limit=limit,
    )
    try:
        outputs = run_transfer(config)
    except (BackendError, DatasetError, ValueError) as exc:
        raise _fail(exc)
    click.echo(f"wrote {len(outputs)} transferred sentences to {out_dir}/outputs.txt")


@cli.command()
@click.option("--hyp", "hyp_path", type=click.Path(exists=True), required=True)
@click.option("--src", "src_path", type=click.Path(exists=True), required=True)
@click.option("--ref", "ref_path", type=click.Path(exists=True), default=None)
@click.option("--direction", "direction_text", required=True, help="source:target styles.")
@click.option("--out", "out_dir", type=click.Path(), default=None)
@common_options
def evaluate(hyp_path, src_path, ref_path, direction_text, out_dir, backends_path, seed,
             parallelism, data_root, dataset_spec) -> None:
    """Score a hypotheses file against its sources (and references, if any)."""
    try:
        direction = TransferDirection.parse(direction_text)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    backends = _resolve_backends(backends_path, "")
    try:
        hyps = load_corpus(hyp_path, direction.target).sentences
        sources = load_corpus(src_path, direction.source).sentences
        refs = load_corpus(ref_path, direction.target).sentences if ref_path else None
        report = run_evaluate(
            hyps, sources, direction, backends, refs,
            out_dir=Path(out_dir) if out_dir else None,
        )
    except (BackendError, DatasetError, ValueError) as exc:
        raise _fail(exc)
    click.echo(markdown_table([("run", report)]))


@cli.command()
@click.option("--dataset", default="toyvolt", show_default=True)
@click.option("--direction", "direction_text", required=True)
@click.option("--n", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--out", "out_dir", type=click.Path(), required=True)
@common_options
def distill(dataset, direction_text, n, out_dir, backends_path, seed, parallelism,
            data_root, dataset_spec) -> None:
    """Synthesize mask-supervision (d1) and fill-target (d2) JSONL datasets."""
    spec = _load_spec(dataset, dataset_spec, data_root)
    try:
        direction = spec.direction(direction_text)
    except (DatasetError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    backends = _resolve_backends(backends_path, spec.name)
    config = ExperimentConfig(
        dataset=spec, direction=direction,
        strategy=StrategyConfig(method="llm-as-signal", seed=seed),
        backends=backends, parallelism=parallelism, seed=seed, out_dir=Path(out_dir),
    )
    try:
        d1_path, d2_path = run_distill(config, n)
    except (BackendError, DatasetError, ValueError) as exc:
        raise _fail(exc)
    click.echo(f"wrote {d1_path} and {d2_path}")


@cli.command("demo-select")
@click.option("--dataset", default="toyvolt", show_default=True)
@click.option("--direction", "direction_text", required=True)
@click.option("--query", required=True)
@click.option("--k", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@common_options
def demo_select(dataset, direction_text, query, k, out_path, backends_path, seed,
                parallelism, data_root, dataset_spec) -> None:
    """Pick the top-k most similar corpus sentences and transfer them into demos."""
    spec = _load_spec(dataset, dataset_spec, data_root)
    try:
        direction = spec.direction(direction_text)
    except (DatasetError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    backends = _resolve_backends(backends_path, spec.name)
    try:
        corpus = load_corpus(spec.train_files[direction.source], direction.source)
        demos = select_demonstrations(
            query, corpus, direction, k, backends,
            MaskingConfig(tau=spec.default_tau, alpha_mode="direct"),
        )
    except (BackendError, DatasetError, ValueError, KeyError) as exc:
        raise _fail(exc)
    payload = [
        {"source": d.source_text, "transferred": d.transferred_text,
         "similarity": d.similarity}
        for d in demos
    ]
    text = json.dumps(payload, indent=2)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


@cli.command("sweep-alpha")
@click.option("--dataset", default="toyvolt", show_default=True)
@click.option("--direction", "direction_text", required=True)
@click.option("--grid", "grid_text", default=",".join(f"{i / 10:.1f}" for i in range(11)),
              show_default=True, help="Comma-separated aggressiveness values in [0, 1].")
@click.option("--emit-mask-counts", is_flag=True, default=False,
              help="Add a masked-token-count column to the CSV.")
@click.option("--limit", type=click.IntRange(min=1), default=None)
@click.option("--out", "out_dir", type=click.Path(), required=True)
@common_options
def sweep_alpha(dataset, direction_text, grid_text, emit_mask_counts, limit, out_dir,
                backends_path, seed, parallelism, data_root, dataset_spec) -> None:
    """Sweep prompt-then-am's aggressiveness and emit one CSV row per value."""
    try:
        grid = sorted(float(v) for v in grid_text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise click.UsageError(f"cannot parse grid {grid_text!r}: {exc}") from exc
    if not grid:
        raise click.UsageError("the sweep grid must not be empty")
    spec = _load_spec(dataset, dataset_spec, data_root)
    try:
        direction = spec.direction(direction_text)
    except (DatasetError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    backends = _resolve_backends(backends_path, spec.name)
    config = ExperimentConfig(
        dataset=spec, direction=direction,
        strategy=StrategyConfig(method="prompt-then-am", seed=seed),
        backends=backends, parallelism=parallelism, seed=seed,
        out_dir=Path(out_dir), limit=limit,
    )
    try:
        rows = run_sweep_alpha(config, grid, emit_mask_counts)
    except (BackendError, DatasetError, ValueError) as exc:
        raise _fail(exc)
    click.echo(f"wrote {len(rows)} rows to {out_dir}/sweep.csv")


def main() -> None:
    try:
        cli(standalone_mode=True)
    except Exception as exc:  # pragma: no cover - click handles its own errors
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
