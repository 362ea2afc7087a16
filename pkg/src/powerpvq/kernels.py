"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy implementation in ``_pykernels`` is used. Set ``POWERPVQ_BACKEND=python``
to force the fallback.
"""
import math
import os

import numpy as np

from . import _pykernels

_BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    _BACKENDS["cython"] = _ckernels


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name=None):
    if name is None:
        name = os.environ.get("POWERPVQ_BACKEND") or ("cython" if _ckernels else "python")
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}") from None


BACKEND = "cython" if get_backend() is _ckernels else "python"
_impl = get_backend()


def quantize_abs_batch(va, k, backend=None):
    impl = get_backend(backend) if backend else _impl
    return impl.quantize_abs_batch(va, int(k))


def quantize_batch(x, k, p, backend=None):
    impl = get_backend(backend) if backend else _impl
    return impl.quantize_batch(x, int(k), float(p))


def sq_errors_grid(x, k, p_grid, backend=None):
    impl = get_backend(backend) if backend else _impl
    return impl.sq_errors_grid(x, int(k), np.asarray(p_grid, dtype=np.float64))


def mse_grid(x, k, p_grid, backend=None):
    """Mean squared error per power; means are correctly rounded (fsum)."""
    errs = sq_errors_grid(x, k, p_grid, backend)
    n = errs.shape[1]
    return np.array([math.fsum(row) / n for row in errs])


def use_backend(name):
    """Switch the process-wide default backend."""
    global _impl, BACKEND
    _impl = get_backend(name)
    BACKEND = name
