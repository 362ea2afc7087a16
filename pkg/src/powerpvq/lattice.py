"""Placement of the S(3, K)^+ lattice on S_2^+ by minimizing an edge energy.

Vertices are the nonnegative integer triples summing to K; neighbours differ
by +1 in one coordinate and -1 in another. The energy of a placement is the
sum over edges of the fourth power of the edge length.
"""
import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

log = logging.getLogger(__name__)

__all__ = [
    "LatticeGraph",
    "OptimizationResult",
    "OptimizerDivergence",
    "build_lattice",
    "radial_configuration",
    "check_configuration",
    "edge_lengths",
    "edge_objective",
    "edge_objective_grad",
    "optimize",
    "central_edge_mean",
    "write_point_csv",
]


class OptimizerDivergence(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class LatticeGraph:
    k: int
    vertices: np.ndarray  # (n, 3) int
    edges: np.ndarray  # (m, 2) int, i < j

    @property
    def corners(self):
        return np.flatnonzero((self.vertices == self.k).any(axis=1))

    @property
    def center(self):
        """Index of the vertex closest to the barycenter (ties: lowest index)."""
        return int(np.argmin(((self.vertices - self.k / 3) ** 2).sum(axis=1)))


def build_lattice(k):
    if int(k) != k or k < 1:
        raise ContractViolation("K must be a positive integer")
    k = int(k)
    verts = [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for up in range(3):
            for down in range(3):
                if up == down or v[down] == 0:
                    continue
                w = list(v)
                w[up] += 1
                w[down] -= 1
                j = index[tuple(w)]
                if i < j:
                    edges.append((i, j))
    return LatticeGraph(k, np.array(verts, dtype=np.int64), np.array(sorted(edges), dtype=np.int64))


def radial_configuration(graph):
    v = graph.vertices.astype(np.float64)
    return v / np.linalg.norm(v, axis=1)[:, None]


def check_configuration(config, graph, tol=1e-9):
    config = np.asarray(config, dtype=np.float64)
    if config.shape != graph.vertices.shape:
        raise ContractViolation(f"configuration shape {config.shape} does not match the lattice")
    if np.any(config < 0) or np.any(np.abs(np.linalg.norm(config, axis=1) - 1) > tol):
        raise ContractViolation("configuration points must lie on S_2^+")
    return config


def edge_lengths(config, graph):
    d = config[graph.edges[:, 0]] - config[graph.edges[:, 1]]
    return np.sqrt((d * d).sum(axis=1))


def edge_objective(config, graph):
    d = config[graph.edges[:, 0]] - config[graph.edges[:, 1]]
    sq = (d * d).sum(axis=1)
    return math.fsum(sq * sq)


def edge_objective_grad(config, graph):
    """d/dx_i of sum ||x_i - x_j||^4 is 4 ||x_i - x_j||^2 (x_i - x_j)."""
    i, j = graph.edges[:, 0], graph.edges[:, 1]
    d = config[i] - config[j]
    g = 4.0 * (d * d).sum(axis=1)[:, None] * d
    grad = np.zeros_like(config)
    np.add.at(grad, i, g)
    np.add.at(grad, j, -g)
    return grad


@dataclass
class OptimizationResult:
    config: np.ndarray
    trace: list  # objective after every accepted step, starting with the initial value
    steps: int
    converged: bool
    reason: str = ""


def _project(x, support):
    # zero coordinates stay zero: boundary vertices remain on their face
    x = np.where(support, np.maximum(x, 0.0), 0.0)
    n = np.linalg.norm(x, axis=1)
    if np.any(n == 0):
        return None  # a point left the octant entirely; caller shrinks the step
    return x / n[:, None]


def optimize(graph, initial=None, steps=10_000, step_size=None, rel_tol=1e-10, max_halvings=30,
             callback=None):
    """Projected gradient descent with backtracking.

    Each iteration steps against the gradient, clamps to the octant, keeps
    every vertex on the face of its lattice point (coordinates that are 0 in
    the vertex stay 0) and renormalizes; corners stay put. A step that raises the objective is
    retried at half the size, up to ``max_halvings`` times, after which the
    run stops; a step that pushes a point out of the octant is retried the
    same way. Accepted steps let the size grow by 10%. ``callback(x, f)``
    sees every accepted configuration.
    """
    x = radial_configuration(graph) if initial is None else check_configuration(initial, graph).copy()
    support = graph.vertices > 0
    free = np.ones(len(x), dtype=bool)
    free[graph.corners] = False
    if step_size is None:
        step_size = graph.k**2 / 8.0
    f = edge_objective(x, graph)
    trace = [f]
    converged = False
    reason = "max steps"
    taken = 0
    for taken in range(1, steps + 1):
        g = edge_objective_grad(x, graph)
        if not np.all(np.isfinite(g)):
            raise OptimizerDivergence(f"non-finite gradient at step {taken}")
        g[~free] = 0.0
        if not np.any(g):
            converged, reason = True, "zero gradient"
            break
        for _ in range(max_halvings + 1):
            cand = _project(x - step_size * g, support)
            if cand is not None:
                cand[~free] = x[~free]
                fc = edge_objective(cand, graph)
                if fc <= f:
                    break
            step_size /= 2
        else:
            converged, reason = True, "line search exhausted"
            taken -= 1
            break
        rel = (f - fc) / f if f > 0 else 0.0
        x, f = cand, fc
        trace.append(f)
        if callback is not None:
            callback(x, f)
        step_size *= 1.1
        if rel < rel_tol:
            converged, reason = True, "relative change below tolerance"
            break
    log.info("optimize K=%d: %d steps (%s), objective %.9g -> %.9g",
             graph.k, taken, reason, trace[0], trace[-1])
    return OptimizationResult(x, trace, taken, converged, reason)


def central_edge_mean(config, graph):
    """Mean length of the edges touching the most central vertex."""
    c = graph.center
    mask = (graph.edges[:, 0] == c) | (graph.edges[:, 1] == c)
    return float(edge_lengths(config, graph)[mask].mean())


def write_point_csv(config, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertex_id", "a", "b", "c"])
        for i, (a, b, c) in enumerate(config):
            w.writerow([i, repr(float(a)), repr(float(b)), repr(float(c))])
