#!/usr/bin/env python3
"""Sweep one or two parameters and tabulate equilibria/stability per cell.

The default scan walks c through the pitchfork at c = 1 for the classic
parameter slice and records the equilibrium count, the origin class and
the certificate flags, which is enough to read the bifurcation off the
CSV.  Rows are byte-identical for any --workers value.

    python3 scripts/bifurcation_scan.py --out scan.csv
    python3 scripts/bifurcation_scan.py --axis M --start -1 --stop 2 \
        --count 601 --c 0.5 --tasks equilibria,origin_class,regime
"""

from __future__ import annotations

import argparse

from lorenzlab import SweepAxis, SweepSpec, SystemParams, emit, run_sweep


def parse_args() -> argparse.Namespace:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--axis", default="c", help="swept parameter (a, b, c, M, N or P)")
    ap.add_argument("--start", type=float, default=0.5)
    ap.add_argument("--stop", type=float, default=1.5)
    ap.add_argument("--count", type=int, default=201)
    # optional second axis, same grid conventions
    ap.add_argument("--axis2", default=None)
    ap.add_argument("--start2", type=float, default=0.0)
    ap.add_argument("--stop2", type=float, default=1.0)
    ap.add_argument("--count2", type=int, default=11)
    for name, default in (("a", 10.0), ("b", 8.0 / 3.0), ("c", 1.0),
                          ("M", 0.0), ("N", 0.0), ("P", 0.0)):
        ap.add_argument(f"--{name}", type=float, default=default,
                        help=f"base value of {name} off the swept axes")
    ap.add_argument(
        "--tasks",
        default="equilibria,origin_class,certificate",
        help="comma list drawn from equilibria, origin_class, certificate, regime, lle",
    )
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--out", default=None, help="destination (default stdout)")
    return ap.parse_args()


def main() -> None:
    args = parse_args()
    axes = [SweepAxis(args.axis, args.start, args.stop, args.count)]
    if args.axis2 is not None:
        axes.append(SweepAxis(args.axis2, args.start2, args.stop2, args.count2))
    spec = SweepSpec(
        base=SystemParams(a=args.a, b=args.b, c=args.c,
                          M=args.M, N=args.N, P=args.P),
        axes=tuple(axes),
        tasks=tuple(t.strip() for t in args.tasks.split(",") if t.strip()),
    )
    result = run_sweep(spec, workers=args.workers)
    emit(result, format=args.format, destination=args.out)


if __name__ == "__main__":
    main()
