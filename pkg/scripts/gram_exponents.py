#!/usr/bin/env python3
"""Print the Gram determinant of the trace form and its 2-adic exponent for small (n, d)."""

import argparse

from sergeev.algebra import new_context
from sergeev.linalg import format_rational
from sergeev.trace import gram_report


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=400, help="skip points with a larger basis")
    args = ap.parse_args(argv)
    print(f"{'n':>2} {'d':>2} {'dim':>5}  det  k")
    for n in range(1, 5):
        for d in range(1, 5):
            ctx = new_context(n, d)
            if ctx.dim > args.max_dim:
                continue
            rep = gram_report(ctx)
            print(f"{n:>2} {d:>2} {ctx.dim:>5}  {format_rational(rep.computed)}  {rep.details.get('k', '-')}")


if __name__ == "__main__":
    main()
