"""Enumerative coding: a bijection between S(L, K) and ``range(N(L, K))``.

Ordering, recursing on the first coordinate: points with first coordinate 0
come first, then magnitudes 1..K in turn, ``+m`` before ``-m``. Each block
holds N(L-1, K-|first|) points. Integer arithmetic only.
"""
from dataclasses import dataclass

from .errors import ContractViolation, IndexRangeError
from .quantizer import PyramidPoint, codebook_table

__all__ = ["CodebookIndex", "encode_index", "decode_index"]


@dataclass(frozen=True)
class CodebookIndex:
    value: int
    l: int
    k: int

    def __post_init__(self):
        n = codebook_table(self.l, self.k)[self.l][self.k]
        if not 0 <= self.value < n:
            raise IndexRangeError(f"index {self.value} outside [0, {n}) for L={self.l}, K={self.k}")

    def __str__(self):
        return str(self.value)


def encode_index(y):
    """Rank of the pyramid point ``y`` in the canonical ordering."""
    if not isinstance(y, PyramidPoint):
        raise ContractViolation("encode_index expects a PyramidPoint")
    l, k = y.l, y.k
    n = codebook_table(l, k)
    rank = 0
    rest = k
    for pos, v in enumerate(y.ints):
        if v == 0:
            continue
        tail = n[l - pos - 1]
        m = abs(v)
        rank += tail[rest] + 2 * sum(tail[rest - j] for j in range(1, m))
        if v < 0:
            rank += tail[rest - m]
        rest -= m
    return CodebookIndex(rank, l, k)


def decode_index(index, l=None, k=None):
    """Inverse of :func:`encode_index`.

    Accepts a :class:`CodebookIndex`, or a plain integer with ``l`` and ``k``.
    """
    if not isinstance(index, CodebookIndex):
        if l is None or k is None:
            raise ContractViolation("plain integer index needs l and k")
        index = CodebookIndex(int(index), int(l), int(k))
    l, k, rank = index.l, index.k, index.value
    n = codebook_table(l, k)
    out = []
    rest = k
    for pos in range(l):
        tail = n[l - pos - 1]
        if rank < tail[rest]:
            out.append(0)
            continue
        rank -= tail[rest]
        m = 1
        while True:
            block = tail[rest - m]
            if rank < block:
                out.append(m)
                break
            rank -= block
            if rank < block:
                out.append(-m)
                break
            rank -= block
            m += 1
        rest -= m
    return PyramidPoint(tuple(out), k)
