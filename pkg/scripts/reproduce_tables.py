"""Regenerate every reference table as CSV into one directory.

    python3 scripts/reproduce_tables.py --out results/
"""

import argparse
import sys
from pathlib import Path

from hhbar.cli import main as hhbar

JOBS = [
    ("table2_bo.csv", ["table2", "--flavor", "bo"]),
    ("table2_scaled.csv", ["table2", "--flavor", "scaled"]),
    ("table3_bo.csv", ["table3", "--flavor", "bo"]),
    ("table3_scaled.csv", ["table3", "--flavor", "scaled"]),
    ("table4.csv", ["table4"]),
    ("table5.csv", ["table5"]),
    ("scattering.csv", ["scatter", "--scan"]),
]


def run(out: Path, workers: int) -> int:
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, args in JOBS:
        extra = ["--workers", str(workers)] if args[0] == "scatter" else []
        code = hhbar([*args, *extra, "-o", str(out / name)])
        print(f"{name}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--workers", type=int, default=3)
    args = ap.parse_args()
    sys.exit(run(args.out, args.workers))
