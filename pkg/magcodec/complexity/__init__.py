from .compressors import (
    BUILTIN_COMPRESSORS,
    Compressor,
    available_compressors,
    get_compressor,
    register_compressor,
)
from .estimate import (
    ComplexityEstimate,
    estimate,
    estimate_conditional,
    estimate_conditional_stream,
    estimate_stream,
)

__all__ = [
    "BUILTIN_COMPRESSORS",
    "ComplexityEstimate",
    "Compressor",
    "available_compressors",
    "estimate",
    "estimate_conditional",
    "estimate_conditional_stream",
    "estimate_stream",
    "get_compressor",
    "register_compressor",
]
