"""Tabulate 43/4 (rs - r - s) against 30(r^2-1)(s^2-1)/67 for torus knots."""

import argparse

from surgery_lattices.slope_pipeline import comparison_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rmax", type=int, default=30)
    ap.add_argument("--all", action="store_true", help="print every row, not only r <= 8")
    args = ap.parse_args()
    rows = comparison_table(args.rmax)
    print(f"{'knot':>9}  {'43/4(rs-r-s)':>14}  {'old bound':>14}  {'ratio':>12}  improved")
    for row in rows:
        if args.all or row["r"] <= 8 or not row["improved"]:
            print(f"T({row['r']},{row['s']})".rjust(9),
                  f"{float(row['threshold']):14.4f}  {float(row['niZhang']):14.4f}  "
                  f"{str(row['ratio']):>12}  {row['improved']}")
    bad = [(row["r"], row["s"]) for row in rows if not row["improved"]]
    print(f"{len(rows)} knots with r <= {args.rmax}; not strictly improved: {bad}")


if __name__ == "__main__":
    main()
