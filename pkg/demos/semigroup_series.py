"""Average semigroup weight divided by genus squared, as plot-ready CSV.

    python3 demos/semigroup_series.py --gmax 60 --out semigroups.csv

For m = 3 the ratio drifts toward 5/18 = 0.2777...; the script prints the last
few rows for each m and writes every row to the CSV file.
"""

import argparse
import csv

from wlpoly.gallery.semigroups import semigroup_series


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mmin", type=int, default=3)
    ap.add_argument("--mmax", type=int, default=5)
    ap.add_argument("--gmax", type=int, default=30)
    ap.add_argument("--out", default="semigroup_series.csv")
    args = ap.parse_args()

    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "g", "count", "total_weight", "average", "average_over_g2", "average_over_g2_decimal"])
        for m in range(args.mmin, args.mmax + 1):
            rows = semigroup_series(m, args.gmax)
            for r in rows:
                ratio = r["average_over_g2"]
                w.writerow([m, r["g"], r["count"], r["total_weight"], r["average"], ratio, f"{float(ratio):.10f}"])
            for r in rows[-3:]:
                print(f"m={m} g={r['g']:3d} count={r['count']:8d} average/g^2={float(r['average_over_g2']):.6f}")
    print("wrote", args.out)


if __name__ == "__main__":
    main()
