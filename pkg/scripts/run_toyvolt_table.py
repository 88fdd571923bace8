#!/usr/bin/env python3
"""Run all six transfer methods over the bundled toyvolt test sets (both
directions, mock backends) and print the metric table.

Everything is deterministic, so this doubles as a quick desk check that the
whole engine is wired: each row reports ACC / r-sBLEU / s-sBLEU / PPL / Mean.

Usage: python scripts/run_toyvolt_table.py [--limit N] [--seed N]
"""

from __future__ import annotations

import argparse
import time

from styleforge.backends import load_backends
from styleforge.datasets import get_dataset, load_test_set, toyvolt_backends_path
from styleforge.harness import ExperimentConfig, run_transfer
from styleforge.masking import MaskingConfig
from styleforge.metrics import MARKDOWN_HEADER, evaluate_run
from styleforge.strategies import METHODS, StrategyConfig
from styleforge.textcore import TransferDirection

MODES = {"prompt-then-am": "aggressiveness"}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=None, help="Sentences per direction.")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    spec = get_dataset("toyvolt")
    backends = load_backends(toyvolt_backends_path())
    for direction in (
        TransferDirection("negative", "positive"),
        TransferDirection("positive", "negative"),
    ):
        print(f"\n## toyvolt {direction}\n")
        print(MARKDOWN_HEADER)
        sources, refs = load_test_set(spec, direction)
        sentences = sources.sentences[: args.limit] if args.limit else sources.sentences
        ref_seqs = refs.sentences[: len(sentences)] if refs else None
        for method in METHODS:
            started = time.perf_counter()
            config = ExperimentConfig(
                dataset=spec,
                direction=direction,
                strategy=StrategyConfig(
                    method=method,
                    masking=MaskingConfig(spec.default_tau, MODES.get(method, "direct")),
                    seed=args.seed,
                ),
                backends=backends,
                seed=args.seed,
                limit=args.limit,
            )
            outputs = run_transfer(config)
            report = evaluate_run(outputs, sentences, direction, backends, ref_seqs)
            elapsed = time.perf_counter() - started
            print(report.markdown_row(f"{method} ({elapsed:.1f}s)"))


if __name__ == "__main__":
    main()
