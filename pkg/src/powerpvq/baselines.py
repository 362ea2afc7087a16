"""Low-rate reference quantizers and the L = 2 trigonometric codebook.

* sign: one bit per coordinate, reconstruction ``±g``; ``g = 1/sqrt(L)``
  keeps codewords on S_2, the fitted ``g = E sum|x_i| / L`` minimizes MSE.
* sign+max: signs plus the position of the largest magnitude, reconstructed
  with a two-level magnitude profile (``w_max`` at the argmax, ``w_rest``
  elsewhere, unit norm).
* trig: for L = 2 the map ``y -> sin(y * pi / 2)`` carries S_1^+ onto S_2^+
  with equal angular spacing of lattice points.
"""
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from . import kernels
from .benchmark import DEFAULT_SEED, to_db
from .errors import ContractViolation
from .geometry import DEFAULT_LAW, as_unit_vector, sample_unit_vectors
from .quantizer import bit_cost

__all__ = [
    "SignCode",
    "SignMaxCode",
    "BaselineRow",
    "sign_quantize",
    "sign_reconstruct",
    "sign_max_quantize",
    "sign_max_reconstruct",
    "sign_max_weights",
    "fit_sign_max_weights",
    "fit_sign_gain",
    "sign_gain",
    "trig_map",
    "trig_map_inverse",
    "trig_quantize_batch",
    "trig_mse",
    "baseline_mse",
    "baseline_comparison",
    "BASELINE_FIELDS",
]

BASELINE_FIELDS = ("quantizer_name", "l", "params", "cost_bits", "mse", "db_vs_sign")


@dataclass(frozen=True)
class SignCode:
    signs: tuple  # 1 = negative

    @property
    def l(self):
        return len(self.signs)

    @property
    def cost_bits(self):
        return float(self.l)


@dataclass(frozen=True)
class SignMaxCode:
    signs: tuple
    argmax: int

    def __post_init__(self):
        if not 0 <= self.argmax < len(self.signs):
            raise ContractViolation("argmax outside [0, L)")

    @property
    def l(self):
        return len(self.signs)

    @property
    def cost_bits(self):
        return self.l + math.log2(self.l)


def _sign_bits(x):
    return tuple(int(v < 0) for v in x)


def sign_quantize(x):
    return SignCode(_sign_bits(as_unit_vector(x)))


def sign_reconstruct(code, gain=None):
    """``±gain`` per coordinate; default gain ``1/sqrt(L)`` gives unit norm."""
    g = 1.0 / math.sqrt(code.l) if gain is None else float(gain)
    return np.where(np.asarray(code.signs) == 1, -g, g)


def sign_max_quantize(x):
    x = as_unit_vector(x)
    return SignMaxCode(_sign_bits(x), int(np.argmax(np.abs(x))))  # argmax: first maximal index


@lru_cache(maxsize=None)
def _weights_file():
    text = resources.files("powerpvq").joinpath("data/sign_max_weights.json").read_text()
    return json.loads(text)


def sign_max_weights(l, law=DEFAULT_LAW):
    """(w_max, w_rest) for dimension ``l`` from the shipped fit, else fit on the fly."""
    entry = _weights_file().get("weights", {}).get(law, {}).get(str(l))
    if entry is not None:
        return tuple(entry)
    return fit_sign_max_weights(l, law=law)


def sign_gain(l, law=DEFAULT_LAW):
    """MSE-optimal scalar gain for the sign quantizer, from the shipped fit."""
    g = _weights_file().get("sign_gain", {}).get(law, {}).get(str(l))
    return fit_sign_gain(l, law=law) if g is None else g


def fit_sign_max_weights(l, n_samples=1_000_000, seed=DEFAULT_SEED, law=DEFAULT_LAW):
    """MSE-optimal unit-norm two-level profile, by Monte Carlo.

    With A = E max|x_i| and B = E(sum|x_i| - max|x_i|), the expected inner
    product (r A + B) / sqrt(r^2 + L - 1) peaks at r = A (L - 1) / B.
    """
    if l < 2:
        raise ContractViolation("sign+max needs L >= 2")
    x = np.abs(sample_unit_vectors(l, n_samples, np.random.default_rng(seed), law=law))
    top = x.max(axis=1)
    a = math.fsum(top) / n_samples
    b = math.fsum(x.sum(axis=1) - top) / n_samples
    r = a * (l - 1) / b
    w_rest = 1.0 / math.sqrt(r * r + l - 1)
    return (r * w_rest, w_rest)


def fit_sign_gain(l, n_samples=1_000_000, seed=DEFAULT_SEED, law=DEFAULT_LAW):
    """Scalar gain minimizing sign-quantizer MSE (not unit norm): E sum|x_i| / L."""
    x = sample_unit_vectors(l, n_samples, np.random.default_rng(seed), law=law)
    return math.fsum(np.abs(x).sum(axis=1)) / n_samples / l


def sign_max_reconstruct(code, weights=None, law=DEFAULT_LAW):
    w_max, w_rest = sign_max_weights(code.l, law) if weights is None else weights
    mag = np.full(code.l, w_rest, dtype=np.float64)
    mag[code.argmax] = w_max
    return np.where(np.asarray(code.signs) == 1, -mag, mag)


def trig_map(y):
    """S_1^+ -> S_2^+ for L = 2: ``(sin(y1 pi/2), sin(y2 pi/2))``."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] != 2 or np.any(y < -1e-9) or np.any(np.abs(y.sum(axis=-1) - 1.0) > 1e-9):
        raise ContractViolation("trig_map needs nonnegative pairs summing to 1")
    return np.sin(np.clip(y, 0.0, 1.0) * (np.pi / 2))


def trig_map_inverse(x):
    """S_2^+ -> S_1^+ for L = 2: ``(2/pi) arcsin(x_i)``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != 2 or np.any(x < -1e-9) or np.any(np.abs((x * x).sum(axis=-1) - 1.0) > 1e-9):
        raise ContractViolation("trig_map_inverse needs a nonnegative unit pair")
    return np.arcsin(np.clip(x, 0.0, 1.0)) * (2 / np.pi)


def trig_quantize_batch(x, k):
    """Quantize rows of an (n, 2) unit array on the trig codebook; returns reconstructions."""
    x = np.asarray(x, dtype=np.float64)
    y = trig_map_inverse(np.abs(x))
    y = y / y.sum(axis=1)[:, None]
    q = kernels.quantize_abs_batch(y, k)
    return np.where(x < 0, -1.0, 1.0) * np.sin(q * (np.pi / 2 / k))


def trig_mse(x, k):
    d = np.asarray(x) - trig_quantize_batch(x, k)
    return math.fsum((d * d).sum(axis=1)) / len(d)


def _mse(x, xt):
    d = x - xt
    return math.fsum((d * d).sum(axis=1)) / len(d)


def baseline_mse(name, x, gain=None, weights=None, law=DEFAULT_LAW):
    """Vectorized MSE of the sign or sign+max quantizer on rows of ``x``."""
    l = x.shape[1]
    neg = x < 0
    if name == "sign":
        g = 1.0 / math.sqrt(l) if gain is None else gain
        return _mse(x, np.where(neg, -g, g))
    if name == "sign_max":
        w_max, w_rest = sign_max_weights(l, law) if weights is None else weights
        mag = np.full(x.shape, w_rest)
        mag[np.arange(len(x)), np.abs(x).argmax(axis=1)] = w_max
        return _mse(x, np.where(neg, -mag, mag))
    raise ContractViolation(f"unknown baseline {name!r}")


@dataclass(frozen=True)
class BaselineRow:
    quantizer_name: str
    l: int
    params: str
    cost_bits: float
    mse: float
    db_vs_sign: float

    def row(self):
        return [getattr(self, f) for f in BASELINE_FIELDS]


def baseline_comparison(l, n_samples=100_000, seed=DEFAULT_SEED, ks=(4, 6), p=1.0, law=DEFAULT_LAW):
    """Sign (unit-norm and fitted gain), sign+max and PVQ at each K in ``ks``.

    All quantizers see one sample set; ``db_vs_sign`` is relative to the
    unit-norm sign quantizer.
    """
    x = sample_unit_vectors(l, n_samples, np.random.default_rng(seed), law=law)
    mse_sign = baseline_mse("sign", x)
    g = sign_gain(l, law)
    w_max, w_rest = sign_max_weights(l, law)
    rows = [
        BaselineRow("sign", l, "gain=1/sqrt(L)", float(l), mse_sign, 0.0),
        BaselineRow("sign_fitted", l, f"gain={g:.6g}", float(l), baseline_mse("sign", x, gain=g), 0.0),
        BaselineRow("sign_max", l, f"w_max={w_max:.6g};w_rest={w_rest:.6g}",
                    l + math.log2(l), baseline_mse("sign_max", x, weights=(w_max, w_rest)), 0.0),
    ]
    for k in ks:
        rows.append(BaselineRow("pvq", l, f"K={k};p={p:g}", bit_cost(l, k),
                                float(kernels.mse_grid(x, k, [p])[0]), 0.0))
    return [BaselineRow(r.quantizer_name, r.l, r.params, r.cost_bits, r.mse, to_db(mse_sign, r.mse))
            for r in rows]
