"""Command-line interface.

Subcommands:
  upscale  guided upsampling of one LR depth map
  eval     RMSE between a prediction and ground truth
  stats    gradient-magnitude statistics of a depth map
  bench    dataset benchmark (simulate LR, upsample, score)

Exit codes: 0 success, 2 input/parse error, 3 numerical abort.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bench import METHODS, run_benchmark
from .guided import GuidedFilterParams
from .image_io import ImageIOError, read_guide, read_image, write_image
from .metrics import gradient_stats, rmse
from .pipeline import NumericalAbortError, SolverParams, upsample

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, default=0.75, help="reduced penalty weight")
    p.add_argument("--beta0", type=float, default=0.0025, help="initial coupling weight")
    p.add_argument("--kappa", type=float, default=2.0, help="per-iteration growth of beta")
    p.add_argument("--iters", type=int, default=30, help="number of iterations")
    p.add_argument("--gf-radius", type=int, default=8, help="guided filter window radius")
    p.add_argument("--gf-eps", type=float, default=1e-4, help="guided filter regularizer")
    p.add_argument(
        "--pad",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="edge-pad before the periodic solve (--no-pad disables)",
    )
    p.add_argument("--value-scale", type=float, default=255.0,
                   help="internal working range of depth values")


def _solver_params(args, penalty: str = "l0t") -> SolverParams:
    return SolverParams(
        t=args.t,
        beta0=args.beta0,
        kappa=args.kappa,
        max_iter=args.iters,
        gf=GuidedFilterParams(radius=args.gf_radius, epsilon=args.gf_eps),
        pad=args.pad,
        value_scale=args.value_scale,
        penalty=penalty,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthsr", description="Guided depth image super-resolution"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    up = sub.add_parser("upscale", help="upsample one depth map")
    up.add_argument("--lr", required=True, help="low-resolution depth (PGM/PFM)")
    up.add_argument("--guide", required=True, help="guide image (PNG/PGM/PFM)")
    up.add_argument("--factor", type=int, required=True, choices=(2, 4, 8))
    _add_solver_flags(up)
    up.add_argument("--gt", help="optional ground truth for trace RMSE")
    up.add_argument("--out", required=True, help="output depth path (.pfm/.pgm)")
    up.add_argument("--trace", help="write per-iteration trace CSV here")

    ev = sub.add_parser("eval", help="RMSE between prediction and ground truth")
    ev.add_argument("--pred", required=True)
    ev.add_argument("--gt", required=True)

    st = sub.add_parser("stats", help="gradient-magnitude statistics")
    st.add_argument("--depth", required=True)
    st.add_argument("--csv", action="store_true", help="emit the histogram as CSV")

    be = sub.add_parser("bench", help="run the dataset benchmark")
    be.add_argument("--dataset", required=True, help="directory of <name>/gt.pfm+guide.png")
    be.add_argument("--factors", default="2,4", help="comma-separated factors")
    be.add_argument("--methods", default=",".join(METHODS), help="comma-separated methods")
    be.add_argument("--seed", type=int, default=7)
    be.add_argument("--sigma0", type=float, default=2.0, help="depth-scaled noise level")
    be.add_argument("--out", required=True, help="report CSV path")
    _add_solver_flags(be)
    return parser


def _cmd_upscale(args) -> int:
    lr = read_image(args.lr)
    guide = read_guide(args.guide)
    gt = read_image(args.gt) if args.gt else None
    out, trace = upsample(lr, guide, args.factor, _solver_params(args), gt=gt)
    write_image(out, args.out)
    if args.trace:
        trace.write_csv(args.trace)
    final = trace.records[-1].rmse if trace.records else None
    if final is not None:
        print(f"final rmse: {final:.6f}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    pred = read_image(args.pred)
    gt = read_image(args.gt)
    print(f"rmse: {rmse(pred, gt):.6f}")
    return EXIT_OK


def _cmd_stats(args) -> int:
    depth = read_image(args.depth)
    stats = gradient_stats(depth)
    if args.csv:
        n = max(stats.hist_x.size, stats.hist_y.size)
        print("magnitude,count_horizontal,count_vertical")
        for m in range(n):
            cx = stats.hist_x[m] if m < stats.hist_x.size else 0
            cy = stats.hist_y[m] if m < stats.hist_y.size else 0
            print(f"{m},{cx},{cy}")
    else:
        zx, ox, gx = stats.fractions_x
        zy, oy, gy = stats.fractions_y
        print(f"horizontal: zero={zx:.4f} one={ox:.4f} larger={gx:.4f}")
        print(f"vertical:   zero={zy:.4f} one={oy:.4f} larger={gy:.4f}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    factors = tuple(int(f) for f in args.factors.split(",") if f)
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    report = run_benchmark(
        args.dataset,
        factors=factors,
        params=_solver_params(args),
        methods=methods,
        seed=args.seed,
        noise_sigma=args.sigma0,
    )
    report.write_csv(args.out)
    for line in report.skipped:
        print(f"skipped {line}", file=sys.stderr)
    print(report.to_markdown(), end="")
    print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {
    "upscale": _cmd_upscale,
    "eval": _cmd_eval,
    "stats": _cmd_stats,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NumericalAbortError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ImageIOError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
