from .base import (
    BackendError,
    BackendSet,
    BackendUnreachable,
    ClassifyResult,
    GenerationParams,
    MalformedResponse,
    TokenScore,
)
from .config import load_backends, resolve_backends
from .mocks import (
    AntonymGenerator,
    EchoSlotFiller,
    HashingEmbedder,
    LexiconClassifier,
    MockMaskPredictor,
    TemplateFiller,
    UnigramPerplexity,
    train_mock_mask_predictor,
)

__all__ = [
    "AntonymGenerator",
    "BackendError",
    "BackendSet",
    "BackendUnreachable",
    "ClassifyResult",
    "EchoSlotFiller",
    "GenerationParams",
    "HashingEmbedder",
    "LexiconClassifier",
    "MalformedResponse",
    "MockMaskPredictor",
    "TemplateFiller",
    "TokenScore",
    "UnigramPerplexity",
    "load_backends",
    "resolve_backends",
    "train_mock_mask_predictor",
]
