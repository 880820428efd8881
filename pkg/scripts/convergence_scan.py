"""Selected eigenvalues over an (n_max, r_max) grid, printed as CSV.

Useful for locating the plateau where near-threshold levels stop moving.
"""

import argparse
import csv
import sys

from hhbar import spectrum


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--flavor", default="bo", choices=("bo", "scaled"))
    ap.add_argument("--l", type=int, default=0)
    ap.add_argument("--nmax", type=int, nargs="+", default=[60, 80, 100, 120])
    ap.add_argument("--rmax", type=float, nargs="+", default=[15.0, 20.0, 25.0])
    ap.add_argument("--rmin", type=float, default=3e-5)
    ap.add_argument("--states", type=int, nargs="+", default=[1, 20, 27, 28, 29])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    rows = spectrum.convergence_scan(args.flavor, args.l, args.nmax, args.rmax, r_min=args.rmin,
                                     indices=args.states, workers=args.workers)
    w = csv.writer(sys.stdout)
    w.writerow(["n_max", "r_max", "n_bound", *(f"E{k}" for k in args.states)])
    for r in rows:
        w.writerow([r["n_max"], r["r_max"], r["n_bound"],
                    *(repr(float(r["energies"][k])) if k in r["energies"] else "" for k in args.states)])


if __name__ == "__main__":
    main()
