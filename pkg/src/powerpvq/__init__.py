"""Pyramid vector quantization with a tunable power projection."""
from .enumerative import CodebookIndex, decode_index, encode_index
from .errors import ContractViolation, DegenerateInputError, IndexRangeError
from .geometry import norm, power_project, radial_project, sample_unit_vector, sample_unit_vectors
from .kernels import BACKEND
from .quantizer import (
    PyramidPoint,
    QuantizerConfig,
    bit_cost,
    codebook_size,
    quantize,
    quantize_abs,
    reconstruct,
)

__version__ = "0.1.0"
