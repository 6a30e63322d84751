"""Command-line entry point: ``halfharmonic <subcommand> [flags]``.

Every subcommand writes CSV (header plus rows, floats to 9 significant
digits) to ``--out`` or standard output.  ``--plot-data`` additionally writes
whitespace-separated ``x y`` files next to the CSV.

Exit codes: 0 on success, 2 when some row carries an unconverged
minimization, 1 on a usage error.
"""

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex

EXIT_OK, EXIT_USAGE, EXIT_UNCONVERGED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.9g}"


def format_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _plot_pairs(command, rows):
    if command == "blaschke-energy":
        return {"energy": [(r["k"], r["energy"]) for r in rows]}
    if command == "bubble-sweep":
        return {"gap": [(r["eps"] ** 2, r["gap_minus_2pi"]) for r in rows]}
    if command == "lambda-sweep":
        return {"class0": [(r["lambda"], r["E_class0"]) for r in rows],
                "class1": [(r["lambda"], r["E_class1"]) for r in rows]}
    if command == "unattained-class":
        return {"trajectory": [(r["iteration"], r["energy"]) for r in rows]}
    if command == "concentration-demo":
        return {"energy": [(r["lambda"], r["energy"]) for r in rows]}
    return {"full": [(r["level"], r["seminorm_full"]) for r in rows],
            "cut": [(r["level"], r["seminorm_cut"]) for r in rows]}


def _float_list(text):
    try:
        vals = [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _int_list(text):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None,
                        help="grid size, a power of two >= 64 (default 512; 2048 for "
                             "bubble-sweep and unattained-class)")
    common.add_argument("--tol", type=float, default=1e-4, help="residual tolerance")
    common.add_argument("--max-iter", type=int, default=20000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="CSV path (default: stdout)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--plot-data", action="store_true",
                        help="also write x y pair files beside --out")

    p = _Parser(prog="halfharmonic", description="Numerical experiments on half-harmonic circle-valued maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("blaschke-energy", parents=[common])
    s.add_argument("--k-max", type=int, default=5)
    s.add_argument("--conjugated", action="store_true")

    s = sub.add_parser("bubble-sweep", parents=[common])
    s.add_argument("--lam", type=float, default=1.0)
    s.add_argument("--eps", type=_float_list, default=[0.2, 0.1, 0.05])

    s = sub.add_parser("lambda-sweep", parents=[common])
    s.add_argument("--lambdas", type=_float_list, default=None,
                   help="explicit grid (default: 30 log steps from 0.25 to 8)")

    s = sub.add_parser("unattained-class", parents=[common])
    s.add_argument("--lam", type=float, default=1.0)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--rho", type=float, default=0.05)
    s.add_argument("--eps", type=float, default=0.05)

    s = sub.add_parser("concentration-demo", parents=[common])
    s.add_argument("--lambdas", type=_float_list, default=None)

    s = sub.add_parser("pathological", parents=[common])
    s.add_argument("--profile", choices=("sqrt_log", "loglog"), default="sqrt_log")
    s.add_argument("--levels", type=_int_list, default=[11, 12, 13, 14])
    return p


_LARGE_GRID = {"bubble-sweep", "unattained-class"}


def run(args):
    """Execute parsed arguments; return ``(rows, flagged, summary_lines)``."""
    n = args.n if args.n is not None else (2048 if args.command in _LARGE_GRID else 512)
    cfg = ex.ExperimentConfig(n=n, tol_residual=args.tol, max_iter=args.max_iter,
                              seed=args.seed, out=args.out, workers=args.workers)
    cmd = args.command
    notes = []
    flagged = []
    if cmd == "blaschke-energy":
        rows = ex.run_blaschke_energy(args.k_max, cfg, conjugated=args.conjugated)
    elif cmd == "bubble-sweep":
        rows = ex.run_bubble_sweep(args.lam, args.eps, cfg)
        if len(rows) > 1:
            notes.append(f"slope of gap vs eps^2: {ex.gap_slope(rows):.6g}")
    elif cmd == "lambda-sweep":
        rows = ex.run_lambda_sweep(args.lambdas, cfg)
        flagged = ex.unconverged_rows(rows, cfg.tol_residual)
        lam_hat = ex.crossing_estimate(rows)
        notes.append("observed crossing (estimate): "
                     + ("none in grid" if lam_hat is None else f"{lam_hat:.6g}"))
    elif cmd == "unattained-class":
        rep = ex.run_unattained_class(args.lam, args.k, cfg, rho=args.rho, eps=args.eps)
        rows = rep.rows
        notes.append(f"competitor energy {rep.competitor_energy:.9g} "
                     f"(2 pi k = {2 * np.pi * rep.k:.9g}), degree {rep.competitor_degree}")
        notes.append(f"class jumps {rep.class_jumps}; final degree {rep.final_degree}, "
                     f"energy {rep.final_energy:.9g}")
    elif cmd == "concentration-demo":
        rows = ex.run_concentration_demo(args.lambdas, cfg)
        drop = ex.transition_drop(rows)
        if drop is not None:
            notes.append(f"energy drop across the transition: {drop:.6g}")
    else:
        rows = ex.run_pathological(args.profile, args.levels, cfg)
    for r in flagged:
        notes.append(f"unconverged row at lambda={r['lambda']:.6g}")
    return rows, bool(flagged), notes


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, flagged, notes = run(args)
    except ValueError as err:
        print(f"halfharmonic: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    text = format_csv(ex.COLUMNS[args.command], rows)
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        if args.plot_data:
            for name, pairs in _plot_pairs(args.command, rows).items():
                body = "".join(f"{_fmt(x)} {_fmt(y)}\n" for x, y in pairs)
                out.with_name(f"{out.stem}.{name}.dat").write_text(body)
    else:
        sys.stdout.write(text)
        if args.plot_data:
            print("--plot-data needs --out; skipped", file=sys.stderr)
    for line in notes:
        print(line, file=sys.stderr)
    return EXIT_UNCONVERGED if flagged else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
