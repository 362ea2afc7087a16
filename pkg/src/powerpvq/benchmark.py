"""Monte Carlo MSE estimation, the p sweep and the improvement table.

Every cell draws one sample set and reuses it for all powers in the grid
(common random numbers), so the radial MSE at p = 1 and the best MSE are
measured on identical inputs and the reported reduction is never negative.
"""
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ContractViolation
from .geometry import DEFAULT_LAW, sample_unit_vectors
from .quantizer import QuantizerConfig

__all__ = [
    "SweepCell",
    "ImprovementReport",
    "DEFAULT_SEED",
    "DEFAULT_SAMPLES",
    "DEFAULT_GRID",
    "REPORT_FIELDS",
    "p_grid",
    "derive_cell_seed",
    "estimate_mse",
    "sweep_p",
    "improvement_table",
    "to_db",
    "format_number",
    "reports_to_csv",
    "write_reports_csv",
]

DEFAULT_SEED = 1
DEFAULT_SAMPLES = 10_000
REPORT_FIELDS = ("l", "k", "best_p", "mse_radial", "mse_best", "pct", "db", "n_samples", "seed")


def p_grid(p_min=1.0, p_max=1.5, step=0.01):
    """Inclusive, evenly spaced grid; values rounded to 10 decimals."""
    if step <= 0 or p_max < p_min:
        raise ContractViolation("need p_min <= p_max and step > 0")
    n = int(round((p_max - p_min) / step)) + 1
    return tuple(round(p_min + i * step, 10) for i in range(n))


DEFAULT_GRID = p_grid()


@dataclass(frozen=True)
class SweepCell:
    l: int
    k: int
    p: float
    mse: float
    n_samples: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.mse <= 4.0:
            raise ContractViolation(f"MSE {self.mse} outside [0, 4]")


@dataclass(frozen=True)
class ImprovementReport:
    l: int
    k: int
    best_p: float
    mse_radial: float
    mse_best: float
    pct: float
    db: float
    n_samples: int
    seed: int
    cells: tuple = field(default=(), compare=False, repr=False)

    def row(self):
        return [getattr(self, name) for name in REPORT_FIELDS]


def derive_cell_seed(master_seed, l, k):
    """Seed for cell (l, k): numpy's SeedSequence hash of (master, l, k), first 64-bit word."""
    ss = np.random.SeedSequence([int(master_seed), int(l), int(k)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _samples(l, n_samples, seed, law):
    if n_samples < 1:
        raise ContractViolation("n_samples must be >= 1")
    return sample_unit_vectors(l, n_samples, np.random.default_rng(seed), law=law)


def estimate_mse(l, k, p, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, law=DEFAULT_LAW):
    """Average squared L2 error of quantize -> reconstruct at power ``p``."""
    QuantizerConfig(l, k)
    x = _samples(l, n_samples, seed, law)
    mse = float(kernels.mse_grid(x, k, [float(p)])[0])
    return SweepCell(l, k, float(p), mse, n_samples, int(seed))


def to_db(mse_ref, mse):
    """Gain of ``mse`` over ``mse_ref`` in decibels."""
    if not (mse_ref > 0 and mse > 0):
        raise ContractViolation("to_db needs positive MSE values")
    return 10.0 * math.log10(mse_ref / mse)


def sweep_p(l, k, grid=DEFAULT_GRID, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, law=DEFAULT_LAW):
    """Evaluate every power in ``grid`` on one sample set and report the best.

    Ties in MSE go to the smaller power.
    """
    QuantizerConfig(l, k)
    grid = sorted(float(p) for p in grid)
    if 1.0 not in grid:
        raise ContractViolation("the p grid must contain 1.0 (the radial reference)")
    x = _samples(l, n_samples, seed, law)
    mses = kernels.mse_grid(x, k, grid)
    cells = tuple(SweepCell(l, k, p, float(m), n_samples, int(seed)) for p, m in zip(grid, mses))
    best = int(np.argmin(mses))
    mse_radial = float(mses[grid.index(1.0)])
    mse_best = float(mses[best])
    if mse_best == mse_radial:
        pct, db = 0.0, 0.0
    else:
        pct = 100.0 * (1.0 - mse_best / mse_radial)
        db = to_db(mse_radial, mse_best) if mse_best > 0 else math.inf
    return ImprovementReport(l, k, grid[best], mse_radial, mse_best, pct, db, n_samples, int(seed), cells)


def _cell(args):
    l, k, grid, n_samples, master_seed, law = args
    rep = sweep_p(l, k, grid, n_samples, derive_cell_seed(master_seed, l, k), law)
    return ImprovementReport(*rep.row())  # drop per-p cells before pickling back


def improvement_table(l_range, k_range, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                      grid=DEFAULT_GRID, jobs=1, law=DEFAULT_LAW):
    """``sweep_p`` over every (l, k), sorted by (l, k).

    Cell seeds depend only on the master seed and (l, k), so the result does
    not depend on ``jobs``.
    """
    ls, ks = sorted(set(l_range)), sorted(set(k_range))
    if not ls or not ks:
        raise ContractViolation("empty L or K range")
    tasks = [(l, k, tuple(grid), n_samples, seed, law) for l in ls for k in ks]
    for l, k, *_ in tasks:
        QuantizerConfig(l, k)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_cell, tasks, chunksize=1))
    else:
        reports = [_cell(t) for t in tasks]
    return sorted(reports, key=lambda r: (r.l, r.k))


def format_number(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{v:.6g}"


def reports_to_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for r in reports:
        w.writerow([format_number(v) for v in r.row()])
    return buf.getvalue()


def write_reports_csv(reports, path):
    with open(path, "w", newline="") as fh:
        fh.write(reports_to_csv(reports))
