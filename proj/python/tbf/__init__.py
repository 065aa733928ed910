"""Transitive Boolean function toolkit.

Thin Python surface over the C++ core: function-spec parsing and complexity
measures, the weight-coded cell codecs, the encoded pointer-matrix
constructions with their symmetry checks, and the k-sum gadget functions.
"""

from ._core import (
    build_witness,
    cellbits,
    construction_eval,
    construction_info,
    decode_cell,
    enc_block_ksum,
    enc_ksum,
    encode_cell,
    eval_function,
    f_qvsc,
    f_qvsc_arity,
    function_arity,
    invariance,
    measures,
    orbit,
)

__all__ = [
    "build_witness",
    "cellbits",
    "construction_eval",
    "construction_info",
    "decode_cell",
    "enc_block_ksum",
    "enc_ksum",
    "encode_cell",
    "eval_function",
    "f_qvsc",
    "f_qvsc_arity",
    "function_arity",
    "invariance",
    "measures",
    "orbit",
]

__version__ = "0.1.0"
