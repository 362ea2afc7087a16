"""Norms, L^s spheres, radial and power projections, and sampling on S_2.

Vectors are plain float64 numpy arrays. The last axis is the coordinate
axis, so every projection also works row-wise on an (n, L) batch.
"""
import math

import numpy as np

from .errors import ContractViolation, DegenerateInputError

__all__ = [
    "norm",
    "radial_project",
    "power_project",
    "signed_power",
    "check_power",
    "as_unit_vector",
    "as_simplex_vector",
    "sample_unit_vector",
    "sample_unit_vectors",
    "UNIT_TOL",
    "SAMPLING_LAWS",
    "DEFAULT_LAW",
]

UNIT_TOL = 1e-12


def norm(v, s=2.0):
    """L^s norm along the last axis; ``s`` may be ``math.inf`` or ``"inf"``."""
    a = np.abs(np.asarray(v, dtype=np.float64))
    s = _norm_order(s)
    if s == math.inf:
        return a.max(axis=-1)
    if s == 1.0:
        return a.sum(axis=-1)
    if s == 2.0:
        return np.sqrt((a * a).sum(axis=-1))
    return (a**s).sum(axis=-1) ** (1.0 / s)


def _norm_order(s):
    if isinstance(s, str):
        if s.lower() not in ("inf", "infinity", "max"):
            raise ContractViolation(f"unknown norm order {s!r}")
        return math.inf
    s = float(s)
    if not s >= 1.0:
        raise ContractViolation(f"norm order must be >= 1, got {s}")
    return s


def radial_project(v, s=2.0):
    """Scale ``v`` onto the unit L^s sphere: ``v / ||v||_s``."""
    v = np.asarray(v, dtype=np.float64)
    n = norm(v, s)
    if np.any(n == 0) or not np.all(np.isfinite(n)):
        raise DegenerateInputError("cannot project a zero or non-finite vector")
    return v / (n[..., None] if v.ndim > 1 else n)


def check_power(p):
    p = float(p)
    if not (p > 0 and math.isfinite(p)):
        raise ContractViolation(f"power must be a positive finite number, got {p}")
    return p


def signed_power(v, p):
    """Coordinate-wise ``|v_i|**p * sgn(v_i)``; zeros stay zero."""
    v = np.asarray(v, dtype=np.float64)
    if p == 1.0:
        return v.copy()
    return np.copysign(np.abs(v) ** p, v)


def power_project(v, p, s=2.0):
    """Signed coordinate power followed by radial projection onto S_s.

    ``p == 1`` takes the exact radial path.
    """
    p = check_power(p)
    v = np.asarray(v, dtype=np.float64)
    return radial_project(signed_power(v, p), s)


def as_unit_vector(x, tol=UNIT_TOL):
    """Validate that ``x`` lies on S_2 (L >= 2) and return it as float64."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ContractViolation("unit vector must be 1-D with L >= 2")
    if not np.all(np.isfinite(x)) or abs(norm(x, 2) - 1.0) > tol:
        raise ContractViolation("vector is not on the Euclidean unit sphere")
    return x


def as_simplex_vector(y, tol=UNIT_TOL, nonnegative=False):
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size < 1:
        raise ContractViolation("simplex vector must be 1-D and nonempty")
    if nonnegative and np.any(y < 0):
        raise ContractViolation("negative coordinate in S_1^+ vector")
    if abs(norm(y, 1) - 1.0) > tol:
        raise ContractViolation("vector is not on the L1 unit sphere")
    return y


SAMPLING_LAWS = ("cube", "sphere")
DEFAULT_LAW = "cube"


def _draw(rng, shape, law):
    if law == "cube":
        return rng.uniform(-1.0, 1.0, shape)
    if law == "sphere":
        return rng.standard_normal(shape)
    raise ContractViolation(f"unknown sampling law {law!r}; expected one of {SAMPLING_LAWS}")


def sample_unit_vector(l, rng, law=DEFAULT_LAW):
    """One random point of S_2 in ``l`` dimensions.

    ``law="sphere"`` normalizes standard normals (uniform on S_2);
    ``law="cube"`` normalizes a uniform draw from [-1, 1]^l, which weights
    directions toward the cube's corners. The benchmarks default to "cube".
    """
    if l < 2:
        raise ContractViolation("dimension must be >= 2")
    while True:
        g = _draw(rng, l, law)
        n = math.sqrt(float(g @ g))
        if n > 0:
            return g / n


def sample_unit_vectors(l, n, rng, law=DEFAULT_LAW):
    """``n`` independent draws as an (n, l) array; same laws as above."""
    if l < 2:
        raise ContractViolation("dimension must be >= 2")
    g = _draw(rng, (n, l), law)
    norms = np.sqrt((g * g).sum(axis=1))
    bad = norms == 0
    while np.any(bad):
        g[bad] = _draw(rng, (int(bad.sum()), l), law)
        norms = np.sqrt((g * g).sum(axis=1))
        bad = norms == 0
    return g / norms[:, None]
