"""The S(L, K) pyramid codebook: quantization, reconstruction and size.

A codebook point is stored as integers ``ints`` with ``sum(|ints|) == k``;
the point on S_1 is ``ints / k``.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ContractViolation
from .geometry import as_unit_vector, check_power, power_project

__all__ = [
    "PyramidPoint",
    "QuantizerConfig",
    "quantize_abs",
    "quantize",
    "reconstruct",
    "codebook_size",
    "codebook_table",
    "bit_cost",
]


@dataclass(frozen=True)
class QuantizerConfig:
    l: int
    k: int

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 2:
            raise ContractViolation(f"dimension L must be an integer >= 2, got {self.l}")
        if int(self.k) != self.k or self.k < 1:
            raise ContractViolation(f"K must be an integer >= 1, got {self.k}")


@dataclass(frozen=True)
class PyramidPoint:
    ints: tuple
    k: int

    def __post_init__(self):
        ints = tuple(int(v) for v in self.ints)
        object.__setattr__(self, "ints", ints)
        if self.k < 0 or sum(abs(v) for v in ints) != self.k:
            raise ContractViolation(f"sum of |coordinates| of {ints} is not {self.k}")

    @property
    def l(self):
        return len(self.ints)

    def as_simplex(self):
        """Coordinates on S_1 (``ints / k``)."""
        return np.asarray(self.ints, dtype=np.float64) / self.k


def quantize_abs(va, k):
    """Round ``k * va`` to nonnegative integers summing to ``k``.

    ``va`` must lie on S_1^+. Rounding is half-to-even; the sum is then
    repaired by incrementing the entries with the smallest ``vr - vk`` or
    decrementing those with the smallest ``vk - vr - sign(vr)`` (which keeps
    zeros out of reach). Ties go to the lowest index.
    """
    va = np.asarray(va, dtype=np.float64)
    if int(k) != k or k < 1:
        raise ContractViolation(f"K must be a positive integer, got {k}")
    if va.ndim != 1 or va.size == 0:
        raise ContractViolation("expected a nonempty 1-D vector")
    if np.any(va < 0) or not np.all(np.isfinite(va)):
        raise ContractViolation("quantize_abs needs nonnegative finite coordinates")
    if abs(math.fsum(va) - 1.0) > 1e-12:
        raise ContractViolation("input is not on S_1 (coordinates must sum to 1)")
    return kernels.quantize_abs_batch(va[None, :], int(k))[0]


def quantize(x, cfg, p=1.0):
    """Map a unit vector to its pyramid point.

    The encoder applies the power-``p`` projection onto S_1 (``|x_i|**p``,
    L1-normalized), quantizes the magnitudes and puts the input signs back;
    an input coordinate equal to 0 gets sign +. ``p == 1`` is plain PVQ.
    """
    x = as_unit_vector(x)
    p = check_power(p)
    if x.size != cfg.l:
        raise ContractViolation(f"vector has L={x.size}, config expects {cfg.l}")
    # same kernel as the Monte Carlo benchmark
    q = kernels.quantize_batch(x[None, :], cfg.k, p)[0]
    return PyramidPoint(tuple(q), cfg.k)


def reconstruct(y, p=1.0):
    """Back-project a pyramid point to S_2 with the power-``1/p`` projection.

    Inverse of the encoder map, so without quantization the round trip is
    the identity. The ``1/k`` scale cancels in the projection.
    """
    p = check_power(p)
    return power_project(np.asarray(y.ints, dtype=np.float64), 1.0 / p, s=2)


@lru_cache(maxsize=None)
def codebook_table(l, k):
    """Immutable table ``t[i][j] = N(i, j)`` for ``i <= l``, ``j <= k``.

    N(i, j) = N(i-1, j) + N(i, j-1) + N(i-1, j-1), N(i, 0) = 1, N(0, j>0) = 0.
    """
    rows = [[1] + [0] * k]
    for i in range(1, l + 1):
        prev = rows[-1]
        row = [1]
        for j in range(1, k + 1):
            row.append(prev[j] + row[j - 1] + prev[j - 1])
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def codebook_size(l, k):
    """Exact number of points in S(L, K)."""
    if l < 0 or k < 0:
        raise ContractViolation("L and K must be nonnegative")
    return codebook_table(l, k)[l][k]


def bit_cost(l, k):
    """log2 of the codebook size (fractional bits)."""
    n = codebook_size(l, k)
    if n < 1:
        raise ContractViolation(f"S({l},{k}) is empty")
    return math.log2(n)
