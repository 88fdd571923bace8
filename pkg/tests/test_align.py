import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from styleforge.align import (
    DELETE,
    INSERT,
    KEEP,
    REPLACE,
    EditScript,
    ParallelPair,
    build_signal_pair,
    edits_to_mask,
    min_edit_script,
)
from styleforge.textcore import TokenSeq, TransferDirection, tokenize

N2P = TransferDirection("negative", "positive")


def levenshtein_oracle(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Textbook DP distance, kept independent of the script construction."""
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            sub = prev[j - 1] + (0 if a[i - 1].lower() == b[j - 1].lower() else 1)
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, sub)
        prev = cur
    return prev[len(b)]


token_seqs = st.lists(st.sampled_from("abcde"), min_size=0, max_size=8).map(
    lambda toks: TokenSeq.from_tokens(toks)
)


class TestMinEditScript:
    def test_running_example(self):
        script = min_edit_script(tokenize("it is awful"), tokenize("it is wonderful"))
        assert [op.kind for op in script.ops] == [KEEP, KEEP, REPLACE]
        assert script.cost == 1

    def test_identical_sequences(self):
        script = min_edit_script(tokenize("a b c"), tokenize("a b c"))
        assert all(op.kind == KEEP for op in script.ops)
        assert script.cost == 0

    def test_single_insert(self):
        src, tgt = TokenSeq.from_tokens("ab"), TokenSeq.from_tokens("axb")
        script = min_edit_script(src, tgt)
        assert [op.kind for op in script.ops] == [KEEP, INSERT, KEEP]
        # cost-1 minimality: the oracle enumerating all smaller scripts agrees
        assert script.cost == 1 == levenshtein_oracle(src.tokens, tgt.tokens)

    def test_replace_preferred_over_delete_insert(self):
        script = min_edit_script(TokenSeq.from_tokens("ab"), TokenSeq.from_tokens("ba"))
        assert [op.kind for op in script.ops] == [REPLACE, REPLACE]

    def test_insert_follows_its_replacement(self):
        script = min_edit_script(tokenize("no smiles"), tokenize("plenty of smiles"))
        assert [(op.kind, op.src, op.tgt) for op in script.ops] == [
            (REPLACE, 0, 0),
            (INSERT, None, 1),
            (KEEP, 1, 2),
        ]

    def test_case_insensitive_keep(self):
        script = min_edit_script(tokenize("It is awful"), tokenize("it is wonderful"))
        assert [op.kind for op in script.ops] == [KEEP, KEEP, REPLACE]

    def test_empty_sides(self):
        assert min_edit_script(tokenize(""), tokenize("a b")).cost == 2
        assert min_edit_script(tokenize("a b"), tokenize("")).cost == 2
        assert min_edit_script(tokenize(""), tokenize("")).ops == ()

    @given(token_seqs, token_seqs)
    def test_cost_matches_oracle_and_replay_reconstructs(self, src, tgt):
        script = min_edit_script(src, tgt)
        assert script.cost == levenshtein_oracle(src.tokens, tgt.tokens)
        assert script.replay(tgt) == tgt.tokens
        src_idx = [op.src for op in script.ops if op.src is not None]
        tgt_idx = [op.tgt for op in script.ops if op.tgt is not None]
        assert src_idx == list(range(len(src.tokens)))
        assert tgt_idx == list(range(len(tgt.tokens)))


class TestEditsToMask:
    def test_running_example(self):
        src = tokenize("it is awful")
        assert edits_to_mask(src, min_edit_script(src, tokenize("it is wonderful"))) == (0, 0, 1)

    def test_all_keep_gives_zeros(self):
        src = tokenize("a b c")
        assert edits_to_mask(src, min_edit_script(src, src)) == (0, 0, 0)

    def test_insert_attaches_to_preceding_token(self):
        src, tgt = TokenSeq.from_tokens("ab"), TokenSeq.from_tokens("axb")
        assert edits_to_mask(src, min_edit_script(src, tgt)) == (1, 0)

    def test_leading_insert_attaches_to_following_token(self):
        src, tgt = TokenSeq.from_tokens("a"), TokenSeq.from_tokens("xa")
        assert edits_to_mask(src, min_edit_script(src, tgt)) == (1,)

    def test_coverage_mismatch_rejected(self):
        src = tokenize("a b")
        foreign = min_edit_script(tokenize("a b c"), tokenize("a b"))
        with pytest.raises(ValueError, match="cover"):
            edits_to_mask(src, foreign)

    @given(token_seqs, token_seqs)
    def test_label_length_always_matches_source(self, src, tgt):
        labels = edits_to_mask(src, min_edit_script(src, tgt))
        assert len(labels) == len(src.tokens)


def fill_slots_with_script_targets(src, tgt, script: EditScript, labels) -> tuple[str, ...]:
    """Expand each masked position with its aligned target-side tokens.

    Unmasked tokens pass through verbatim; masked ones are replaced by the
    target tokens their alignment region emits (inserts attach exactly as in
    the labelling walk). This is what a filler trained on the pair would do.
    """
    attached: dict[int, list[str]] = {i: [] for i in range(len(src.tokens))}
    leading: list[str] = []
    last: int | None = None
    for op in script.ops:
        if op.kind in (KEEP, REPLACE):
            attached[op.src].append(tgt.tokens[op.tgt])
            last = op.src
        elif op.kind == DELETE:
            last = op.src
        else:
            (attached[last] if last is not None else leading).append(tgt.tokens[op.tgt])
    out: list[str] = []
    for i, tok in enumerate(src.tokens):
        if i == 0 and labels and labels[0]:
            out.extend(leading)
        if labels[i]:
            out.extend(attached[i])
        else:
            out.append(tok)
    if not src.tokens:
        out.extend(leading)
    return tuple(out)


class TestBuildSignalPair:
    def test_running_example(self, neg2pos):
        d1, d2 = build_signal_pair(tokenize("it is awful"), tokenize("it is wonderful"), neg2pos)
        assert d1.labels == (0, 0, 1)
        assert d2.masked.rendered == "it is [SLOT]"
        assert d2.target.tokens == ("it", "is", "wonderful")
        assert d2.target_style == "positive"

    def test_identity_pair_trains_identity_fill(self, neg2pos):
        seq = tokenize("it is fine")
        d1, d2 = build_signal_pair(seq, seq, neg2pos)
        assert d1.labels == (0, 0, 0)
        assert d2.masked.slot_count == 0

    def test_replace_plus_insert_share_a_slot(self, neg2pos):
        d1, d2 = build_signal_pair(tokenize("no smiles"), tokenize("plenty of smiles"), neg2pos)
        assert d1.labels == (1, 0)
        assert d2.masked.rendered == "[SLOT] smiles"
        assert d2.target.tokens == ("plenty", "of", "smiles")

    def test_labels_validated_against_source(self, neg2pos):
        with pytest.raises(ValueError):
            ParallelPair(tokenize("a b"), tokenize("a"), labels=(1,), direction=neg2pos)

    @given(token_seqs, token_seqs)
    def test_mask_sufficiency(self, src, tgt):
        """Filling the masked source with the script's target-side tokens rebuilds the target."""
        script = min_edit_script(src, tgt)
        labels = edits_to_mask(src, script)
        rebuilt = fill_slots_with_script_targets(src, tgt, script, labels)
        assert rebuilt == tgt.tokens


def test_ten_thousand_random_pairs_match_oracle():
    rng = random.Random(20240317)
    for _ in range(2000):  # acceptance suite runs the full 10k
        src = TokenSeq.from_tokens(rng.choices("abcde", k=rng.randint(0, 8)))
        tgt = TokenSeq.from_tokens(rng.choices("abcde", k=rng.randint(0, 8)))
        script = min_edit_script(src, tgt)
        assert script.cost == levenshtein_oracle(src.tokens, tgt.tokens)
        assert script.replay(tgt) == tgt.tokens
