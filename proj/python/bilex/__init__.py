"""Bilingual lexicon induction with translation-selection topic models."""

from ._core import (
    MEASURES,
    MODELS,
    BilexError,
    HyperParams,
    SyntheticSpec,
    TrainedModel,
    cosine,
    generate_synthetic,
    kl_divergence,
    load,
    split_tokens,
    tfidf_rank,
    train,
)

__all__ = [
    "MEASURES",
    "MODELS",
    "BilexError",
    "HyperParams",
    "SyntheticSpec",
    "TrainedModel",
    "cosine",
    "generate_synthetic",
    "kl_divergence",
    "load",
    "split_tokens",
    "tfidf_rank",
    "train",
]
__version__ = "0.1.0"
