import pytest
from hypothesis import given
from hypothesis import strategies as st

from styleforge.backends import (
    AntonymGenerator,
    BackendSet,
    EchoSlotFiller,
    HashingEmbedder,
    LexiconClassifier,
    UnigramPerplexity,
)
from styleforge.masking import (
    MaskedText,
    MaskingConfig,
    am_transfer,
    apply_mask,
    predict_mask,
    scale_scores,
)
from styleforge.textcore import TokenSeq, TransferDirection, tokenize

N2P = TransferDirection("negative", "positive")

labels_lists = st.lists(st.sampled_from([0, 1]), min_size=1, max_size=12)


class CountingFiller:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def fill(self, items):
        self.calls += 1
        return self.inner.fill(items)


def make_backends(filler) -> BackendSet:
    return BackendSet(
        classifier=LexiconClassifier(),
        filler=filler,
        generator=AntonymGenerator(),
        embedder=HashingEmbedder(),
        ppl_scorer=UnigramPerplexity(["a"]),
    )


class TestScaleScores:
    def test_max_normalization(self):
        assert scale_scores([0, 0, 2]) == [0, 0, 1]

    def test_all_zero_stays_zero(self):
        assert scale_scores([0, 0, 0]) == [0, 0, 0]

    def test_division(self):
        assert scale_scores([1, 2, 4]) == [0.25, 0.5, 1.0]

    def test_rejects_empty_and_negative(self):
        with pytest.raises(ValueError):
            scale_scores([])
        with pytest.raises(ValueError):
            scale_scores([-1.0])


class TestPredictMask:
    def test_direct_mode(self):
        seq = tokenize("It is awful")
        assert predict_mask(seq, [0, 0, 1], MaskingConfig(0.5, "direct")) == (0, 0, 1)

    def test_aggressiveness_zero_masks_nothing(self):
        seq = tokenize("It is awful")
        cfg = MaskingConfig(0.0, "aggressiveness")
        assert predict_mask(seq, [1.0, 0.9, 1.0], cfg) == (0, 0, 0)

    def test_aggressiveness_one_masks_all_positive(self):
        seq = tokenize("a b")
        cfg = MaskingConfig(1.0, "aggressiveness")
        assert predict_mask(seq, [0.3, 0.9], cfg) == (1, 1)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            predict_mask(tokenize("a b"), [0.1], MaskingConfig())

    @given(st.lists(st.floats(min_value=0, max_value=1), min_size=1, max_size=10))
    def test_mask_count_non_increasing_in_tau(self, scores):
        seq = TokenSeq.from_tokens([f"w{i}" for i in range(len(scores))])
        taus = [i / 10 for i in range(11)]
        counts = [sum(predict_mask(seq, scores, MaskingConfig(t, "direct"))) for t in taus]
        assert counts == sorted(counts, reverse=True)


class TestApplyMask:
    def test_single_trailing_slot(self):
        masked = apply_mask(tokenize("it is awful"), (0, 0, 1))
        assert masked.rendered == "it is [SLOT]"

    def test_all_zero_is_identity(self):
        masked = apply_mask(tokenize("it is awful"), (0, 0, 0))
        assert masked.rendered == "it is awful"
        assert masked.slot_count == 0

    def test_runs_merge(self):
        masked = apply_mask(TokenSeq.from_tokens(list("abcd")), (1, 1, 0, 1))
        assert masked.rendered == "[SLOT] c [SLOT]"

    def test_adjacent_slots_rejected_at_construction(self):
        with pytest.raises(ValueError):
            MaskedText((None, None, "x"))

    @given(labels_lists)
    def test_never_produces_adjacent_slots(self, labels):
        seq = TokenSeq.from_tokens([f"w{i}" for i in range(len(labels))])
        segments = apply_mask(seq, labels).segments
        assert not any(
            a is None and b is None for a, b in zip(segments, segments[1:])
        )

    @given(labels_lists)
    def test_kept_tokens_are_the_unmasked_subsequence(self, labels):
        seq = TokenSeq.from_tokens([f"w{i}" for i in range(len(labels))])
        kept = apply_mask(seq, labels).kept_tokens
        assert kept == tuple(t for t, y in zip(seq.tokens, labels) if y == 0)


class TestAmTransfer:
    def test_running_example(self, toyvolt_backends):
        out = am_transfer(tokenize("it is awful"), N2P, MaskingConfig(0.5, "direct"), toyvolt_backends)
        assert out.tokens == ("it", "is", "wonderful")

    def test_zero_mask_shortcut_skips_fill(self):
        filler = CountingFiller(EchoSlotFiller("[MASKED]"))
        backends = make_backends(filler)
        seq = tokenize("it is")
        out = am_transfer(seq, N2P, MaskingConfig(0.5, "direct"), backends)
        assert out is seq
        assert filler.calls == 0

    def test_merged_slots_collapse_the_sentence(self, toyvolt_backends):
        out = am_transfer(tokenize("awful awful"), N2P, MaskingConfig(0.5, "direct"), toyvolt_backends)
        assert out.tokens == ("wonderful",)

    def test_identity_filler_preserves_unmasked_tokens_in_order(self):
        backends = make_backends(EchoSlotFiller("[MASKED]"))
        seq = tokenize("the awful service was awful today")
        out = am_transfer(seq, N2P, MaskingConfig(0.5, "direct"), backends)
        unmasked = [t for t in seq.tokens if t != "awful"]
        assert [t for t in out.tokens if t != "[MASKED]"] == unmasked

    def test_empty_sequence_passes_through(self, toyvolt_backends):
        seq = tokenize("")
        assert am_transfer(seq, N2P, MaskingConfig(), toyvolt_backends) is seq


def test_masking_config_validation():
    with pytest.raises(ValueError):
        MaskingConfig(tau=1.5)
    with pytest.raises(ValueError):
        MaskingConfig(alpha_mode="sideways")
    assert MaskingConfig(0.3, "aggressiveness").effective_tau == pytest.approx(0.7)
    assert MaskingConfig(0.3, "direct").effective_tau == pytest.approx(0.3)
