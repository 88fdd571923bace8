"""styleforge: unsupervised text style transfer with attention masking, LLM
prompting, and their interactions."""

__version__ = "0.1.0"

from .textcore import Corpus, TokenSeq, TransferDirection, detokenize, tokenize

__all__ = [
    "Corpus",
    "TokenSeq",
    "TransferDirection",
    "__version__",
    "detokenize",
    "tokenize",
]
