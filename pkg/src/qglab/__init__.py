"""Quasigeodesic-language experiments and hyperbolicity probes on Cayley graphs."""

__version__ = "0.1.0"

from .errors import (
    AlphabetError,
    ConfigurationError,
    DistanceNotCertifiedError,
    PreconditionError,
    QglabError,
    ResourceBudgetError,
    ScaleGapError,
    VerificationError,
)
from .groups import (
    GeneratorAlphabet,
    GroupModel,
    Word,
    is_identity,
    make_model,
    reduce_word,
    word_metric,
)
from .qg import QGParams, SubpathViolation, is_local_quasigeodesic, is_qg_loop, is_quasigeodesic, max_locality

__all__ = [
    "AlphabetError",
    "ConfigurationError",
    "DistanceNotCertifiedError",
    "GeneratorAlphabet",
    "GroupModel",
    "PreconditionError",
    "QGParams",
    "QglabError",
    "ResourceBudgetError",
    "ScaleGapError",
    "SubpathViolation",
    "VerificationError",
    "Word",
    "is_identity",
    "is_local_quasigeodesic",
    "is_qg_loop",
    "is_quasigeodesic",
    "make_model",
    "max_locality",
    "reduce_word",
    "word_metric",
    "__version__",
]
