"""Builds tiny random-weight checkpoints on the fly so the protocol tests run
fully offline. The served behavior (schemas, alignment, determinism) does not
depend on checkpoint quality."""

import pytest
import torch
from tokenizers import Tokenizer, models, pre_tokenizers, processors
from transformers import (
    BertConfig,
    BertForMaskedLM,
    BertForSequenceClassification,
    BertModel,
    GPT2Config,
    GPT2LMHeadModel,
    PreTrainedTokenizerFast,
)

from styleforge_shim.config import ShimConfig
from styleforge_shim.roles import RoleSet
from styleforge_shim.server import create_app

WORDS = [
    "the", "food", "was", "awful", "wonderful", "service", "staff", "room",
    "it", "is", "and", "no", "smiles", "good", "bad", "here", "at", "this",
    "place", "rewrite", "following", "text", "in", "a", "positive", "negative",
    "manner", "refine", "without", "changing", "its", "semantic", "please",
    "into", "sentiment", ".", ":", '"', "awful.",
]

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "[BOS]", "[EOS]"]


def _vocab() -> dict[str, int]:
    return {tok: i for i, tok in enumerate(SPECIALS + WORDS)}


def _fast_tokenizer(vocab, with_cls: bool) -> PreTrainedTokenizerFast:
    core = Tokenizer(models.WordLevel(vocab, unk_token="[UNK]"))
    core.pre_tokenizer = pre_tokenizers.Whitespace()
    if with_cls:
        core.post_processor = processors.TemplateProcessing(
            single="[CLS] $A [SEP]",
            pair="[CLS] $A [SEP] $B [SEP]",
            special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
        )
    kwargs = dict(pad_token="[PAD]", unk_token="[UNK]")
    if with_cls:
        kwargs.update(cls_token="[CLS]", sep_token="[SEP]", mask_token="[MASK]")
    else:
        kwargs.update(bos_token="[BOS]", eos_token="[EOS]")
    return PreTrainedTokenizerFast(tokenizer_object=core, **kwargs)


def _bert_config(vocab_size: int, **extra) -> BertConfig:
    return BertConfig(
        vocab_size=vocab_size,
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=128,
        pad_token_id=0,
        **extra,
    )


@pytest.fixture(scope="session")
def checkpoints(tmp_path_factory):
    root = tmp_path_factory.mktemp("tiny-checkpoints")
    vocab = _vocab()
    encoder_tok = _fast_tokenizer(vocab, with_cls=True)
    causal_tok = _fast_tokenizer(vocab, with_cls=False)

    torch.manual_seed(1234)
    paths = {}

    paths["classifier"] = str(root / "classifier")
    encoder_tok.save_pretrained(paths["classifier"])
    BertForSequenceClassification(_bert_config(len(vocab), num_labels=2)).save_pretrained(
        paths["classifier"]
    )

    paths["filler"] = str(root / "filler")
    encoder_tok.save_pretrained(paths["filler"])
    BertForMaskedLM(_bert_config(len(vocab))).save_pretrained(paths["filler"])

    paths["embedder"] = str(root / "embedder")
    encoder_tok.save_pretrained(paths["embedder"])
    BertModel(_bert_config(len(vocab))).save_pretrained(paths["embedder"])

    gpt_config = GPT2Config(
        vocab_size=len(vocab),
        n_positions=128,
        n_embd=32,
        n_layer=2,
        n_head=2,
        bos_token_id=vocab["[BOS]"],
        eos_token_id=vocab["[EOS]"],
        pad_token_id=0,
    )
    paths["causal"] = str(root / "causal")
    causal_tok.save_pretrained(paths["causal"])
    GPT2LMHeadModel(gpt_config).save_pretrained(paths["causal"])
    return paths


@pytest.fixture(scope="session")
def shim_config(checkpoints) -> ShimConfig:
    return ShimConfig(
        classifier_model=checkpoints["classifier"],
        filler_models=checkpoints["filler"],
        generator_model=checkpoints["causal"],
        embedder_model=checkpoints["embedder"],
        ppl_model=checkpoints["causal"],
        classifier_styles=("negative", "positive"),
        max_batch_size=4,
        max_length=96,
    )


@pytest.fixture(scope="session")
def roles(shim_config) -> RoleSet:
    return RoleSet(shim_config)


@pytest.fixture(scope="session")
def client(shim_config, roles):
    from fastapi.testclient import TestClient

    with TestClient(create_app(shim_config, roles=roles)) as test_client:
        yield test_client
