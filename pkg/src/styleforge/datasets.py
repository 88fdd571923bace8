"""Corpus ingestion: one-sentence-per-line files, dataset specs, and the
built-in dataset registry (including the bundled synthetic ``toyvolt`` set)."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .textcore import Corpus, TokenSeq, TransferDirection, tokenize

BUNDLED_DATA_ROOT = Path(__file__).resolve().parent / "data"

# Registry names that follow the 0/1 file convention under a user data root.
# style0/style1 map to the .0/.1 file suffixes.
REGISTRY = {
    "yelp": dict(style0="negative", style1="positive", refs=True, default_tau=0.5),
    "amazon": dict(style0="negative", style1="positive", refs=True, default_tau=0.5),
    "yelp-clean": dict(style0="negative", style1="positive", refs=True, default_tau=0.5),
    "amazon-clean": dict(style0="negative", style1="positive", refs=True, default_tau=0.5),
    "politeness": dict(
        style0="impolite", style1="polite", refs=False, default_tau=0.35, icl_style_word="style"
    ),
}

# Clean test sets ship 500 sentences, evenly split between the two styles.
_CLEAN_TEST_SIZE = 250


class DatasetError(Exception):
    """Missing, empty, or misaligned dataset files."""


@dataclass(frozen=True)
class DirectionFiles:
    src: Path
    refs: Path | None = None


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    style0: str
    style1: str
    train_files: dict[str, Path]
    test_files: dict[TransferDirection, DirectionFiles]
    heldout_files: dict[str, Path] = field(default_factory=dict)
    default_tau: float = 0.5
    icl_style_word: str = "sentiment"

    @property
    def styles(self) -> tuple[str, str]:
        return (self.style0, self.style1)

    def direction(self, text: str) -> TransferDirection:
        direction = TransferDirection.parse(text)
        if set(direction.styles) != {self.style0, self.style1}:
            raise DatasetError(
                f"direction {direction} does not match dataset styles {self.styles}"
            )
        return direction


def load_corpus(path: str | Path, style: str) -> Corpus:
    """Read a one-sentence-per-line corpus (UTF-8, LF or CRLF), preserving order."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read corpus file {path}: {exc}") from exc
    sentences: list[TokenSeq] = []
    for line in raw.splitlines():
        line = line.strip()
        if line:
            sentences.append(tokenize(line))
    if not sentences:
        raise DatasetError(f"corpus file {path} has no sentences")
    return Corpus(style=style, sentences=sentences, origin=str(path))


def load_test_set(spec: DatasetSpec, direction: TransferDirection) -> tuple[Corpus, Corpus | None]:
    """Load a direction's test sources plus length-aligned references when present."""
    if direction not in spec.test_files:
        raise DatasetError(f"dataset {spec.name!r} has no test files for direction {direction}")
    files = spec.test_files[direction]
    sources = load_corpus(files.src, direction.source)
    if spec.name in ("yelp-clean", "amazon-clean") and len(sources) != _CLEAN_TEST_SIZE:
        warnings.warn(
            f"{spec.name} {direction} has {len(sources)} sources, expected {_CLEAN_TEST_SIZE}",
            stacklevel=2,
        )
    refs = None
    if files.refs is not None:
        refs = load_corpus(files.refs, direction.target)
        if len(refs) != len(sources):
            raise DatasetError(
                f"reference/source length mismatch for {spec.name} {direction}: "
                f"{len(refs)} refs vs {len(sources)} sources"
            )
    return sources, refs


def load_dataset_spec(path: str | Path) -> DatasetSpec:
    """Parse a DatasetSpec JSON block; relative paths resolve against the file."""
    path = Path(path)
    obj = json.loads(path.read_text(encoding="utf-8"))
    base = path.parent

    def _resolve(rel: str) -> Path:
        p = Path(rel)
        return p if p.is_absolute() else base / p

    train = {style: _resolve(rel) for style, rel in obj.get("train", {}).items()}
    heldout = {style: _resolve(rel) for style, rel in obj.get("heldout", {}).items()}
    test: dict[TransferDirection, DirectionFiles] = {}
    for key, files in obj.get("test", {}).items():
        refs = files.get("refs")
        test[TransferDirection.parse(key)] = DirectionFiles(
            src=_resolve(files["src"]), refs=_resolve(refs) if refs else None
        )
    return DatasetSpec(
        name=obj["name"],
        style0=obj["style0"],
        style1=obj["style1"],
        train_files=train,
        test_files=test,
        heldout_files=heldout,
        default_tau=float(obj.get("default_tau", 0.5)),
        icl_style_word=obj.get("icl_style_word", "sentiment"),
    )


def _conventional_spec(name: str, root: Path) -> DatasetSpec:
    meta = REGISTRY[name]
    style0, style1 = meta["style0"], meta["style1"]
    base = root / name

    def _refs(direction_suffix: str) -> Path | None:
        if not meta["refs"]:
            return None
        path = base / f"ref.{direction_suffix}.txt"
        return path if path.exists() else None

    return DatasetSpec(
        name=name,
        style0=style0,
        style1=style1,
        train_files={style0: base / "train.0.txt", style1: base / "train.1.txt"},
        test_files={
            TransferDirection(style0, style1): DirectionFiles(base / "test.0.txt", _refs("0to1")),
            TransferDirection(style1, style0): DirectionFiles(base / "test.1.txt", _refs("1to0")),
        },
        heldout_files={},
        default_tau=meta["default_tau"],
        icl_style_word=meta.get("icl_style_word", "sentiment"),
    )


def get_dataset(name: str, data_root: str | Path | None = None) -> DatasetSpec:
    """Look up a built-in dataset. ``toyvolt`` is bundled; the others expect
    their corpora arranged under ``data_root/<name>/`` in the 0/1 convention."""
    if name == "toyvolt":
        return load_dataset_spec(BUNDLED_DATA_ROOT / "toyvolt" / "dataset.json")
    if name in REGISTRY:
        if data_root is None:
            raise DatasetError(
                f"dataset {name!r} needs --data-root pointing at its corpus files"
            )
        return _conventional_spec(name, Path(data_root))
    known = ", ".join(["toyvolt", *REGISTRY])
    raise DatasetError(f"unknown dataset {name!r}; known: {known}")


def toyvolt_backends_path() -> Path:
    """The bundled mock backend config wired to the toyvolt lexicon."""
    return BUNDLED_DATA_ROOT / "toyvolt" / "backends.json"
