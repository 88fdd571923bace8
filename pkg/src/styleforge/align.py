"""Minimal-replacement-edit alignment between a sentence and its rewrite.

Aligns a source sentence to an LLM-produced rewrite with a word-level edit
script (unit costs, replacements preferred over delete+insert pairs) and
converts the edits into mask supervision for the mask predictor plus
masked-input/target pairs for the filling model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .masking import MaskedText, MaskLabels, apply_mask
from .textcore import TokenSeq, TransferDirection

KEEP, REPLACE, DELETE, INSERT = "keep", "replace", "delete", "insert"


@dataclass(frozen=True)
class EditOp:
    """One alignment arc; ``src``/``tgt`` are token indices (None when unused)."""

    kind: str
    src: int | None = None
    tgt: int | None = None


@dataclass(frozen=True)
class EditScript:
    ops: tuple[EditOp, ...]

    @property
    def cost(self) -> int:
        return sum(1 for op in self.ops if op.kind != KEEP)

    def replay(self, tgt: TokenSeq) -> tuple[str, ...]:
        """Emit the target tokens this script produces (keeps/replaces/inserts in order)."""
        return tuple(tgt.tokens[op.tgt] for op in self.ops if op.tgt is not None)


def _tok_eq(a: str, b: str) -> bool:
    # Alignment ignores case; emitted text keeps the target-side casing.
    return a.lower() == b.lower()


def min_edit_script(src: TokenSeq, tgt: TokenSeq) -> EditScript:
    """Minimal-cost edit script under unit costs, deterministic tie-breaking.

    Among minimal-cost scripts the one with the fewest delete+insert arcs wins
    (replacements preferred); remaining ties resolve by a fixed backtrace
    order, which attaches insertions directly after the replacement or keep
    they extend.
    """
    a, b = src.tokens, tgt.tokens
    m, n = len(a), len(b)
    # cell = (edit cost, delete+insert count), minimized lexicographically
    cost = [[(0, 0)] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        cost[i][0] = (i, i)
    for j in range(1, n + 1):
        cost[0][j] = (j, j)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            diag_c, diag_d = cost[i - 1][j - 1]
            if _tok_eq(a[i - 1], b[j - 1]):
                best = (diag_c, diag_d)
            else:
                best = (diag_c + 1, diag_d)
            up_c, up_d = cost[i - 1][j]
            best = min(best, (up_c + 1, up_d + 1))
            left_c, left_d = cost[i][j - 1]
            best = min(best, (left_c + 1, left_d + 1))
            cost[i][j] = best

    ops: list[EditOp] = []
    i, j = m, n
    while i > 0 or j > 0:
        here = cost[i][j]
        if i > 0 and j > 0 and _tok_eq(a[i - 1], b[j - 1]):
            c, d = cost[i - 1][j - 1]
            if (c, d) == here:
                ops.append(EditOp(KEEP, i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        if j > 0:
            c, d = cost[i][j - 1]
            if (c + 1, d + 1) == here:
                ops.append(EditOp(INSERT, None, j - 1))
                j -= 1
                continue
        if i > 0 and j > 0:
            c, d = cost[i - 1][j - 1]
            if (c + 1, d) == here:
                ops.append(EditOp(REPLACE, i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        c, d = cost[i - 1][j]
        if (c + 1, d + 1) != here:
            raise AssertionError("edit-script backtrace lost the minimal path")
        ops.append(EditOp(DELETE, i - 1, None))
        i -= 1
    return EditScript(tuple(reversed(ops)))


def _check_coverage(src: TokenSeq, script: EditScript) -> None:
    src_indices = [op.src for op in script.ops if op.src is not None]
    if src_indices != list(range(len(src.tokens))):
        raise ValueError("edit script does not cover the source tokens exactly")


def edits_to_mask(src: TokenSeq, script: EditScript) -> MaskLabels:
    """Label source tokens for masking: replaced/deleted tokens, plus the token
    each insertion attaches to (the preceding source token, or the following
    one when the insertion opens the sentence)."""
    _check_coverage(src, script)
    labels = [0] * len(src.tokens)
    last_src: int | None = None
    pending_initial_insert = False
    for op in script.ops:
        if op.kind == KEEP:
            if pending_initial_insert:
                labels[op.src] = 1  # type: ignore[index]
                pending_initial_insert = False
            last_src = op.src
        elif op.kind in (REPLACE, DELETE):
            labels[op.src] = 1  # type: ignore[index]
            pending_initial_insert = False
            last_src = op.src
        else:  # INSERT
            if last_src is not None:
                labels[last_src] = 1
            else:
                pending_initial_insert = True
    return tuple(labels)


def build_signal_pair(
    src: TokenSeq, llm_out: TokenSeq, direction: TransferDirection
) -> tuple["ParallelPair", "FillExample"]:
    """Turn one (source, LLM rewrite) pair into both distillation items:
    mask supervision for the predictor and a masked-input/target pair for the filler."""
    script = min_edit_script(src, llm_out)
    labels = edits_to_mask(src, script)
    d1 = ParallelPair(source=src, target=llm_out, labels=labels, direction=direction)
    d2 = FillExample(
        masked=apply_mask(src, labels), target=llm_out, target_style=direction.target
    )
    return d1, d2


@dataclass(frozen=True)
class ParallelPair:
    """A pseudo-parallel (source -> target) pair, optionally with mask supervision."""

    source: TokenSeq
    target: TokenSeq
    labels: MaskLabels | None
    direction: TransferDirection

    def __post_init__(self) -> None:
        if self.labels is not None and len(self.labels) != len(self.source.tokens):
            raise ValueError("mask labels must align with the source tokens")


@dataclass(frozen=True)
class FillExample:
    """A masked source and its fill target for training/eval of the filling model."""

    masked: MaskedText
    target: TokenSeq
    target_style: str
