"""Command line interface: ``powerpvq <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 contract violation, 4 I/O error.
"""
import argparse
import csv
import logging
import math
import sys

import numpy as np

from . import benchmark, kernels
from .baselines import BASELINE_FIELDS, baseline_comparison
from .enumerative import encode_index
from .errors import ContractViolation
from .geometry import DEFAULT_LAW, SAMPLING_LAWS, norm, power_project
from .lattice import build_lattice, edge_objective, optimize, radial_configuration, write_point_csv
from .quantizer import QuantizerConfig, codebook_size, quantize, reconstruct

EXIT_USAGE = 2
EXIT_CONTRACT = 3
EXIT_IO = 4

log = logging.getLogger("powerpvq")


def _int_range(text):
    """'5', '2-20' or '4,6,8' -> sorted list of ints."""
    try:
        if "," in text:
            vals = [int(t) for t in text.split(",") if t.strip()]
        elif "-" in text.strip()[1:]:
            lo, hi = text.split("-", 1)
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A-B or A,B,..., got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty range")
    return sorted(set(vals))


def _vector(text):
    try:
        vals = [float(t) for t in text.replace(" ", "").strip("()[]").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse vector {text!r}") from None
    if len(vals) < 2 or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("vector needs at least 2 finite entries")
    return np.array(vals)


def _fmt_vec(v):
    return "(" + ", ".join(f"{x:.6g}" for x in v) + ")"


def _grid(args):
    grid = benchmark.p_grid(args.p_min, args.p_max, args.p_step)
    if 1.0 not in grid:
        grid = tuple(sorted(set(grid) | {1.0}))
    return grid


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_quantize(args):
    x = args.vector
    if args.l is not None and args.l != x.size:
        raise ContractViolation(f"--l {args.l} does not match the vector length {x.size}")
    n2 = float(norm(x, 2))
    if n2 == 0:
        raise ContractViolation("zero vector has no direction")
    if abs(n2 - 1.0) > 1e-12:
        log.warning("input has norm %.6g; normalizing onto the unit sphere", n2)
        x = x / n2
    cfg = QuantizerConfig(x.size, args.k)
    point = quantize(x, cfg, args.p)
    index = encode_index(point)
    xt = reconstruct(point, args.p)
    print(f"input:          {_fmt_vec(x)}")
    print(f"projected (S1): {_fmt_vec(power_project(x, args.p, s=1))}")
    print(f"point:          {point.ints}  K={point.k}")
    print(f"index:          {index.value}  of {codebook_size(cfg.l, cfg.k)}")
    print(f"reconstruction: {_fmt_vec(xt)}")
    print(f"squared_error:  {float(((x - xt) ** 2).sum()):.6g}")


def cmd_sweep(args):
    cfg = QuantizerConfig(args.l, args.k)
    seed = benchmark.derive_cell_seed(args.seed, cfg.l, cfg.k)
    rep = benchmark.sweep_p(cfg.l, cfg.k, _grid(args), args.samples, seed, args.law)
    print(f"L={rep.l} K={rep.k} best_p={rep.best_p:g} mse_radial={rep.mse_radial:.6g} "
          f"mse_best={rep.mse_best:.6g} pct={rep.pct:.3f} db={rep.db:.4f} "
          f"(n={rep.n_samples}, seed={rep.seed})")
    if args.out:
        _write(args.out, benchmark.reports_to_csv([rep]))


def cmd_heatmap(args):
    reports = benchmark.improvement_table(args.l, args.k, args.samples, args.seed, _grid(args),
                                          jobs=args.jobs, law=args.law)
    _write(args.out, benchmark.reports_to_csv(reports))
    if args.out not in (None, "-"):
        print(f"wrote {len(reports)} cells to {args.out}")


def cmd_baselines(args):
    rows = baseline_comparison(args.l, args.samples, args.seed, ks=tuple(args.k), p=args.p, law=args.law)
    lines = [",".join(BASELINE_FIELDS)]
    for r in rows:
        lines.append(",".join(benchmark.format_number(v) if not isinstance(v, str) else v for v in r.row()))
    text = "\n".join(lines) + "\n"
    _write(args.out, text)
    if args.out not in (None, "-"):
        for r in rows:
            print(f"{r.quantizer_name:12s} {r.params:32s} bits={r.cost_bits:7.3f} mse={r.mse:.4f} "
                  f"dB vs sign={r.db_vs_sign:+.3f}")


def cmd_optimize_lattice(args):
    graph = build_lattice(args.k)
    base = radial_configuration(graph)
    res = optimize(graph, base, steps=args.steps)
    for i, f in enumerate(res.trace):
        log.debug("step %d objective %.12g", i, f)
    write_point_csv(base, f"{args.out}_radial.csv")
    write_point_csv(res.config, f"{args.out}_optimized.csv")
    print(f"K={args.k} vertices={len(graph.vertices)} edges={len(graph.edges)} "
          f"baseline={edge_objective(base, graph):.9g} optimized={res.trace[-1]:.9g} "
          f"steps={res.steps} ({res.reason})")


def _common(samples):
    # a fresh parent per subcommand: argparse shares parent actions, so defaults must not be mutated
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=samples)
    common.add_argument("--seed", type=int, default=benchmark.DEFAULT_SEED)
    common.add_argument("--law", choices=SAMPLING_LAWS, default=DEFAULT_LAW,
                        help="input distribution on S_2 (default: %(default)s)")
    common.add_argument("--out", default=None, help="output CSV path ('-' for stdout)")
    return common


def build_parser():
    common = _common(benchmark.DEFAULT_SAMPLES)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--p-min", type=float, default=1.0)
    grid.add_argument("--p-max", type=float, default=1.5)
    grid.add_argument("--p-step", type=float, default=0.01)

    ap = argparse.ArgumentParser(prog="powerpvq", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    ap.add_argument("--backend", choices=kernels.available_backends(), default=None,
                    help=f"kernel backend (default: {kernels.BACKEND})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantize", help="quantize one vector and show every stage")
    p.add_argument("vector", type=_vector,
                   help="comma separated, e.g. 0.6,0.8 (put -- before a vector starting with '-')")
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("sweep", parents=[common, grid], help="p sweep for one (L, K)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("heatmap", parents=[common, grid], help="improvement table over L and K ranges")
    p.add_argument("--l", type=_int_range, default=list(range(2, 21)))
    p.add_argument("--k", type=_int_range, default=list(range(1, 21)))
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("baselines", parents=[_common(100_000)], help="sign, sign+max and PVQ comparison")
    p.add_argument("--l", type=int, default=15)
    p.add_argument("--k", type=_int_range, default=[4, 6], help="PVQ K values, e.g. 4,6")
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(func=cmd_baselines)

    p = sub.add_parser("optimize-lattice", help="edge-energy placement of S(3,K)^+ on S_2^+")
    p.add_argument("--k", type=int, default=15)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--out", default="lattice", help="output prefix for the two CSV files")
    p.set_defaults(func=cmd_optimize_lattice)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s: %(message)s")
    if args.backend:
        kernels.use_backend(args.backend)
    try:
        args.func(args)
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
