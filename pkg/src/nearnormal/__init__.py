"""Complementary binary sequences: base, normal, near-normal and T-sequences.

The package verifies, enumerates and composes quadruples of sequences whose
nonperiodic autocorrelations cancel, and builds Hadamard matrices from them.
"""

from nearnormal.seq_core import (
    BinarySequence,
    InvalidInputError,
    TernarySequence,
    alternate,
    concat,
    naf,
    negate,
    reverse,
    seq_sum,
)
from nearnormal.families import (
    ConstraintViolation,
    QuadSums,
    SequenceQuad,
    TernaryQuad,
    golay_to_normal,
    is_base,
    is_near_normal,
    is_normal,
    is_t_sequences,
    quad_sums,
)

__all__ = [
    "BinarySequence",
    "ConstraintViolation",
    "InvalidInputError",
    "QuadSums",
    "SequenceQuad",
    "TernaryQuad",
    "TernarySequence",
    "alternate",
    "concat",
    "golay_to_normal",
    "is_base",
    "is_near_normal",
    "is_normal",
    "is_t_sequences",
    "naf",
    "negate",
    "quad_sums",
    "reverse",
    "seq_sum",
]

__version__ = "0.1.0"
