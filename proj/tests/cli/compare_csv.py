"""Compare two field CSV files column by column.

usage: compare_csv.py A B [--tol T]

With --tol the numeric columns must agree to |a-b| <= T * max(|a|, |b|, 1);
without it the files must be byte-identical.
"""
import argparse
import csv
import sys


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("a")
    ap.add_argument("b")
    ap.add_argument("--tol", type=float)
    args = ap.parse_args()

    if args.tol is None:
        with open(args.a, "rb") as fa, open(args.b, "rb") as fb:
            if fa.read() != fb.read():
                sys.exit("files differ")
        return

    with open(args.a, newline="") as fa, open(args.b, newline="") as fb:
        ra, rb = list(csv.reader(fa)), list(csv.reader(fb))
    if ra[0] != rb[0] or len(ra) != len(rb):
        sys.exit("headers or row counts differ")
    worst = 0.0
    for row_a, row_b in zip(ra[1:], rb[1:]):
        for x, y in zip(row_a, row_b):
            x, y = float(x), float(y)
            worst = max(worst, abs(x - y) / max(abs(x), abs(y), 1.0))
    print(f"worst relative difference {worst:.3e}")
    if worst > args.tol:
        sys.exit(f"exceeds tolerance {args.tol}")


if __name__ == "__main__":
    main()
