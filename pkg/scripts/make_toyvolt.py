#!/usr/bin/env python3
"""Generate the bundled 'toyvolt' dataset: a synthetic review corpus with a
planted antonym lexicon, sized for the end-to-end mock pipelines.

Splits per style: 600 train / 250 test / 200 heldout. References are the
antonym-mapped test sources. Also writes the dataset spec and a mock backend
config whose lexicons match the planted vocabulary.

Usage: python scripts/make_toyvolt.py [--out DIR] [--seed N]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

ADJECTIVE_PAIRS = [
    ("awful", "wonderful"),
    ("terrible", "fantastic"),
    ("horrible", "lovely"),
    ("bad", "good"),
    ("rude", "friendly"),
    ("dirty", "spotless"),
    ("slow", "quick"),
    ("bland", "tasty"),
    ("overpriced", "affordable"),
    ("disappointing", "delightful"),
    ("greasy", "fresh"),
    ("noisy", "cozy"),
]

NOUNS = [
    "food", "service", "staff", "room", "menu", "coffee",
    "decor", "music", "bathroom", "patio", "dessert", "waiter",
]

# Mostly single-adjective sentences: each stylistic word the pipeline touches
# costs up to four 4-grams of source overlap, so dense edits sink self-BLEU.
SINGLE_TEMPLATES = [
    "the {n} was {a} and nobody seemed to care about it .",
    "we thought the {n} was honestly pretty {a} overall last night .",
    "my friends agreed that the {n} looked {a} that evening .",
    "everyone said the {n} at this place was {a} on weekends .",
    "the {n} near the entrance seemed {a} when we arrived .",
    "for the money the {n} here felt {a} to all of us .",
]

DOUBLE_TEMPLATE = "the {n} was {a} and the {n2} was {a2} ."

NO_TEMPLATE_NEG = "there was no {n} and no {n2} at this place ."
NO_TEMPLATE_POS = "there was plenty of {n} and plenty of {n2} at this place ."


def antonym_table() -> dict[str, str]:
    table: dict[str, str] = {}
    for neg, pos in ADJECTIVE_PAIRS:
        table[neg] = pos
        table[pos] = neg
    table["no"] = "plenty of"
    table["plenty"] = "no"
    return table


def classifier_weights() -> dict[str, float]:
    weights: dict[str, float] = {}
    for neg, pos in ADJECTIVE_PAIRS:
        weights[neg] = -2.0
        weights[pos] = 2.0
    weights["no"] = -1.0
    weights["plenty"] = 1.0
    return weights


def fill_lexicon() -> dict[str, dict[str, float]]:
    n = len(ADJECTIVE_PAIRS)
    return {
        "negative": {neg: float(n - i) for i, (neg, _pos) in enumerate(ADJECTIVE_PAIRS)},
        "positive": {pos: float(n - i) for i, (_neg, pos) in enumerate(ADJECTIVE_PAIRS)},
    }


def make_sentence(rng: random.Random, positive: bool) -> str:
    adjectives = [pos if positive else neg for neg, pos in ADJECTIVE_PAIRS]
    n, n2 = rng.sample(NOUNS, 2)
    a, a2 = rng.sample(adjectives, 2)
    roll = rng.random()
    if roll < 0.08:
        template = NO_TEMPLATE_POS if positive else NO_TEMPLATE_NEG
    elif roll < 0.20:
        template = DOUBLE_TEMPLATE
    else:
        template = rng.choice(SINGLE_TEMPLATES)
    return template.format(n=n, n2=n2, a=a, a2=a2)


def apply_antonyms(sentence: str, table: dict[str, str]) -> str:
    out: list[str] = []
    for tok in sentence.split():
        out.extend(table.get(tok, tok).split())
    return " ".join(out)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = Path(__file__).resolve().parent.parent / "src" / "styleforge" / "data" / "toyvolt"
    parser.add_argument("--out", type=Path, default=default_out)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    table = antonym_table()

    splits = {"train": 600, "test": 250, "heldout": 200}
    files: dict[str, list[str]] = {}
    for split, count in splits.items():
        for style_idx, positive in ((0, False), (1, True)):
            lines = [make_sentence(rng, positive) for _ in range(count)]
            files[f"{split}.{style_idx}.txt"] = lines
    files["ref.0to1.txt"] = [apply_antonyms(s, table) for s in files["test.0.txt"]]
    files["ref.1to0.txt"] = [apply_antonyms(s, table) for s in files["test.1.txt"]]

    for name, lines in files.items():
        (args.out / name).write_text("\n".join(lines) + "\n", encoding="utf-8")

    dataset_spec = {
        "name": "toyvolt",
        "style0": "negative",
        "style1": "positive",
        "default_tau": 0.5,
        "icl_style_word": "sentiment",
        "train": {"negative": "train.0.txt", "positive": "train.1.txt"},
        "heldout": {"negative": "heldout.0.txt", "positive": "heldout.1.txt"},
        "test": {
            "negative:positive": {"src": "test.0.txt", "refs": "ref.0to1.txt"},
            "positive:negative": {"src": "test.1.txt", "refs": "ref.1to0.txt"},
        },
    }
    (args.out / "dataset.json").write_text(
        json.dumps(dataset_spec, indent=2) + "\n", encoding="utf-8"
    )

    backends = {
        "classifier": {
            "kind": "mock-lexicon",
            "pole": "positive",
            "weights": classifier_weights(),
        },
        "filler": {"kind": "mock-template", "lexicon": fill_lexicon()},
        "generator": {"kind": "mock-antonym", "table": table},
        "embedder": {"kind": "mock-hash", "dim": 64},
        "ppl_scorer": {"kind": "mock-unigram", "corpus_paths": ["train.0.txt", "train.1.txt"]},
    }
    (args.out / "backends.json").write_text(
        json.dumps(backends, indent=2) + "\n", encoding="utf-8"
    )
    total = sum(len(lines) for lines in files.values())
    print(f"wrote {len(files) + 2} files ({total} sentences) to {args.out}")


if __name__ == "__main__":
    main()
