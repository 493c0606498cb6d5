"""Batch plotting CLI: ``plotview plot1d ...`` and ``plotview plot2d ...``."""

from __future__ import annotations

import argparse
import sys

from plotview.io import SnapshotFormatError
from plotview.plot1d import plot1d
from plotview.plot2d import plot2d


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plotview", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("plot1d", help="overlay line plots of CSV snapshots")
    p1.add_argument("files", nargs="+", help="snapshot CSV files, one curve each")
    p1.add_argument("--ref", default=None, help="reference CSV drawn as a plain line")
    p1.add_argument("--var", default="rho", help="variable to plot (default rho)")
    p1.add_argument("--zoom", nargs=2, type=float, default=None, metavar=("A", "B"),
                    help="add a zoom panel over x in [A, B]")
    p1.add_argument("--out", required=True, help="output image file")

    p2 = sub.add_parser("plot2d", help="grayscale Schlieren image of a grid snapshot")
    p2.add_argument("file", help="snapshot .meta file (or its base path)")
    p2.add_argument("--zoom", nargs=4, type=float, default=None,
                    metavar=("X0", "X1", "Y0", "Y1"))
    p2.add_argument("--out", required=True, help="output image file")

    args = parser.parse_args(argv)
    try:
        if args.command == "plot1d":
            zoom = tuple(args.zoom) if args.zoom else None
            plot1d(args.files, args.out, ref=args.ref, var=args.var, zoom=zoom)
        else:
            zoom = tuple(args.zoom) if args.zoom else None
            plot2d(args.file, args.out, zoom=zoom)
    except (SnapshotFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
