"""Command-line driver.

Subcommands: ``run`` (simulate a configured problem), ``list-problems``,
``reference`` (fine-mesh baseline run), ``convergence`` (refinement study on
the smooth advection problem).  Exit codes: 0 success, 2 configuration
error, 3 solver abort.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from mfcu.cliio import (
    ConfigError,
    convergence_study,
    parse_config,
    run,
    run_reference,
)
from mfcu.problems import PROBLEM_NAMES


def _cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        rc = parse_config(text)
        if args.out is not None:
            rc.out = args.out
        if args.scheme is not None:
            rc.scheme = args.scheme
        if args.nx is not None:
            rc.nx = args.nx
        if args.ny is not None:
            rc.ny = args.ny
        result = run(rc)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if result.status != 0:
        print(f"solver abort: {result.message}", file=sys.stderr)
        return result.status
    print(f"wrote {len(result.snapshot_files)} snapshot file(s), "
          f"{result.steps} steps, {result.wall_time:.2f}s; manifest: {result.manifest}")
    return 0


def _cmd_list(_args) -> int:
    for name in PROBLEM_NAMES:
        print(name)
    return 0


def _cmd_reference(args) -> int:
    try:
        result = run_reference(args.problem, out=args.out, nx=args.nx)
    except KeyError as exc:
        print(f"config error: {exc.args[0]}", file=sys.stderr)
        return 2
    if result.status != 0:
        print(f"solver abort: {result.message}", file=sys.stderr)
        return result.status
    print(f"reference run done: {result.steps} steps, {result.wall_time:.2f}s")
    return 0


def _cmd_convergence(args) -> int:
    if args.problem != "smooth":
        print("config error: convergence supports --problem smooth", file=sys.stderr)
        return 2
    rows = convergence_study(scheme=args.scheme, levels=args.levels, base_n=args.base_n)
    print(f"{'N':>6} {'L1(rho)':>14} {'order':>7}")
    lines = ["N,l1_rho,order"]
    for n, err, order in rows:
        print(f"{n:>6} {err:>14.6e} {order:>7.3f}")
        lines.append(f"{n},{err:.17g},{order:.4f}")
    if args.out is not None:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / f"convergence_{args.scheme}.csv").write_text("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mfcu", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured simulation")
    p_run.add_argument("--config", required=True, help="path to a key=value config file")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.add_argument("--scheme", default=None, choices=("pccu", "ldpccu", "aiweno"))
    p_run.add_argument("--nx", type=int, default=None)
    p_run.add_argument("--ny", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_list = sub.add_parser("list-problems", help="list catalog problems")
    p_list.set_defaults(func=_cmd_list)

    p_ref = sub.add_parser("reference", help="fine-mesh baseline-scheme reference run")
    p_ref.add_argument("--problem", required=True)
    p_ref.add_argument("--out", default="out")
    p_ref.add_argument("--nx", type=int, default=None)
    p_ref.set_defaults(func=_cmd_reference)

    p_conv = sub.add_parser("convergence", help="grid-refinement study")
    p_conv.add_argument("--problem", default="smooth")
    p_conv.add_argument("--levels", type=int, default=3)
    p_conv.add_argument("--scheme", default="ldpccu", choices=("pccu", "ldpccu", "aiweno"))
    p_conv.add_argument("--base-n", type=int, default=100, dest="base_n")
    p_conv.add_argument("--out", default=None)
    p_conv.set_defaults(func=_cmd_convergence)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
