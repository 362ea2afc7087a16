"""Pure numpy implementation of the hot loops (fallback backend).

``p`` is the encoder exponent: rows go through ``|x|**p``, L1 normalization
and ``quantize_abs``; reconstruction uses ``|y|**(1/p)`` and L2 normalization.

Row sums are accumulated left to right, column by column, as in the compiled
backend. The forward power uses numpy's ``**``, which may differ from libm
``pow`` by an ulp, so the two backends can disagree on inputs that sit within
an ulp of a rounding boundary.
"""
import math

import numpy as np


def _row_sum(a):
    s = a[:, 0].copy()
    for j in range(1, a.shape[1]):
        s += a[:, j]
    return s


def quantize_abs_batch(va, k):
    """Row-wise rounding plus repair of ``k * va`` to integer rows summing to ``k``."""
    va = np.ascontiguousarray(va, dtype=np.float64)
    n, l = va.shape
    vk = k * va
    vr = np.rint(vk)
    deficit = k - _row_sum(vr).astype(np.int64)
    rows = np.flatnonzero(deficit)
    if rows.size:
        d = deficit[rows]
        sub_vk, sub_vr = vk[rows], vr[rows]
        key = np.where(
            (d > 0)[:, None],
            sub_vr - sub_vk,
            sub_vk - sub_vr - np.sign(sub_vr),
        )
        order = np.argsort(key, axis=1, kind="stable")
        rank = np.empty_like(order)
        np.put_along_axis(rank, order, np.broadcast_to(np.arange(l), order.shape), axis=1)
        step = (rank < np.abs(d)[:, None]) * np.sign(d)[:, None]
        vr[rows] = sub_vr + step
    return vr.astype(np.int64)


def _forward(x, k, p):
    a = np.abs(x)
    if p != 1.0:
        a = a**p
    return quantize_abs_batch(a / _row_sum(a)[:, None], k)


def _errors(x, q, k, p):
    if p == 1.0:
        mag = q.astype(np.float64)
    else:
        # libm pow, as in the compiled kernel (numpy's vectorized ** can differ by an ulp)
        mag = np.array([math.pow(j, 1.0 / p) for j in range(k + 1)])[q]
    mag = mag / np.sqrt(_row_sum(mag * mag))[:, None]
    diff = x - np.where(x < 0, -mag, mag)
    return _row_sum(diff * diff)


def quantize_batch(x, k, p):
    """Signed pyramid points for each row of ``x`` (zero inputs get +)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    q = _forward(x, k, p)
    return np.where(x < 0, -q, q)


def sq_errors(x, k, p):
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _errors(x, _forward(x, k, p), k, p)


def sq_errors_grid(x, k, p_grid):
    """(len(p_grid), n) matrix of squared reconstruction errors."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty((len(p_grid), x.shape[0]))
    for i, p in enumerate(p_grid):
        out[i] = _errors(x, _forward(x, k, float(p)), k, float(p))
    return out
