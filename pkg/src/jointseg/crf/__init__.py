from .model import (
    CrfModel,
    FeatureIndex,
    LabelAlphabet,
    TrainConfig,
    build_index,
    log_likelihood_and_gradient,
    marginals,
    train,
    viterbi,
)
from .serialize import load_model, save_model

__all__ = [
    "CrfModel",
    "FeatureIndex",
    "LabelAlphabet",
    "TrainConfig",
    "build_index",
    "load_model",
    "log_likelihood_and_gradient",
    "marginals",
    "save_model",
    "train",
    "viterbi",
]
