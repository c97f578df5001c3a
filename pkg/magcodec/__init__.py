"""Multiaspect graph encodings, MAG-graph isomorphism and compression-distortion experiments."""

__version__ = "0.1.0"

from .codec import (  # noqa: E402
    CharacteristicString,
    EdgeSetString,
    EncodedTau,
    decode_characteristic,
    decode_edge_set_string,
    decode_tau,
    encode_characteristic,
    encode_edge_set_string,
    encode_tau,
    pair,
)
from .core.errors import MagcodecError  # noqa: E402
from .indexing import edge_to_index, index_to_edge, index_to_vertex, vertex_to_index  # noqa: E402
from .isomorphism import ClassicalGraph, check_mag_graph_isomorphism, graph_to_mag, mag_to_graph  # noqa: E402
from .mag import (  # noqa: E402
    BinarySignature,
    CompanionTuple,
    CompositeEdge,
    CompositeVertex,
    SimpleMag,
    make_mag,
    signature_of,
    tau_from_bitstring,
    tau_from_bitstring_general,
)
from .recovery import RecoveryResult, recover_signature  # noqa: E402

__all__ = [
    "BinarySignature",
    "CharacteristicString",
    "ClassicalGraph",
    "CompanionTuple",
    "CompositeEdge",
    "CompositeVertex",
    "EdgeSetString",
    "EncodedTau",
    "MagcodecError",
    "RecoveryResult",
    "SimpleMag",
    "__version__",
    "check_mag_graph_isomorphism",
    "decode_characteristic",
    "decode_edge_set_string",
    "decode_tau",
    "edge_to_index",
    "encode_characteristic",
    "encode_edge_set_string",
    "encode_tau",
    "graph_to_mag",
    "index_to_edge",
    "index_to_vertex",
    "mag_to_graph",
    "make_mag",
    "pair",
    "recover_signature",
    "signature_of",
    "tau_from_bitstring",
    "tau_from_bitstring_general",
    "vertex_to_index",
]
