"""Independent reference implementations used only by the test-suite.

Plain Python lists and the stdlib; nothing here imports powerpvq.
"""
import math
from decimal import ROUND_HALF_EVEN, Decimal


def mathematica_round(v):
    # Round[] on reals: nearest integer, half to even.
    return int(Decimal(repr(float(v))).quantize(Decimal(1), rounding=ROUND_HALF_EVEN))


def ordering(values):
    # Ordering[]: stable ascending permutation (1-based in Mathematica, 0-based here).
    return sorted(range(len(values)), key=lambda i: (values[i], i))


def sign(v):
    return (v > 0) - (v < 0)


def quant(va, k):
    """Line-by-line port of the quant[va_, k_] listing, returning integer counts."""
    vk = [k * a for a in va]
    vr = [mathematica_round(v) for v in vk]
    kr = sum(vr)
    if kr != k:
        if k > kr:
            dif = [r - v for r, v in zip(vr, vk)]
            ord_ = ordering(dif)
            for i in range(k - kr):
                vr[ord_[i]] += 1
        else:
            dif = [v - r - sign(r) for r, v in zip(vr, vk)]
            ord_ = ordering(dif)
            for i in range(kr - k):
                vr[ord_[i]] -= 1
    return vr


def pyramid_points(l, k):
    """All integer l-vectors with sum |y_i| = k (exhaustive generation)."""
    if l == 0:
        return [()] if k == 0 else []
    out = []
    for v in range(-k, k + 1):
        out.extend((v,) + rest for rest in pyramid_points(l - 1, k - abs(v)))
    return out


def canonical_key(y):
    # zero first, then magnitude ascending, + before -, coordinate by coordinate
    return tuple((abs(v), v < 0) for v in y)


def closed_form_size(l, k):
    if k == 0:
        return 1
    return sum(2**i * math.comb(l, i) * math.comb(k - 1, i - 1) for i in range(1, min(l, k) + 1))
