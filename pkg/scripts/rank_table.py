#!/usr/bin/env python3
"""Rank table over a grid of (n, d) points and coefficient samples.

    python3 scripts/rank_table.py --grid 2x2,3x2 --samples 3 --format markdown
"""

import argparse
import random
import sys

from sergeev.algebra import new_context
from sergeev.config import random_coeffs
from sergeev.report import RankTable
from sergeev.structure import rank_reports

DEFAULT_GRID = "1x1,1x2,1x3,1x4,2x1,2x2,2x3,3x1,3x2,4x1"


def parse_grid(text):
    return [tuple(int(v) for v in item.split("x")) for item in text.split(",") if item]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default=DEFAULT_GRID, help="comma-separated NxD points")
    ap.add_argument("--samples", type=int, default=3, help="random coefficient samples besides x^d")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    args = ap.parse_args(argv)

    table = RankTable()
    for n, d in parse_grid(args.grid):
        rng = random.Random(args.seed + d)
        points = [("x^d", {})] + [(f"seed{args.seed}#{i}", random_coeffs(d, rng)) for i in range(args.samples)]
        if d == 1:
            points = points[:1]  # g = x has no free coefficients
        for label, coeffs in points:
            rank_reports(new_context(n, d, coeffs), label, table)
            print(f"done ({n},{d}) {label}", file=sys.stderr)
    sys.stdout.write(table.to_markdown() if args.format == "markdown" else table.to_csv())


if __name__ == "__main__":
    main()
