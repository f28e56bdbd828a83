"""Probe the necklace formulas: which (n, count) combinations self-intersect?

The verbatim construction stacks 2n decahedra at pitch 2pi/n and so wraps the
x-axis twice.  This script runs the overlap validator for the double wrap and
for a single wrap (count = n) and prints the crossing pair counts.

    python scripts/necklace_probe.py --n 3 4 5 6 8
"""

import argparse

from decalock import build_necklace
from decalock.decahedron import find_overlaps


def probe(n, count):
    a = build_necklace(n, count, validate=False)
    overlaps = find_overlaps(a)
    worst = max((p for _, _, p in overlaps), default=0.0)
    return len(a.tiles), len(overlaps), worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6, 8])
    args = ap.parse_args()
    print(f"{'n':>3} {'count':>6} {'tiles':>6} {'crossing pairs':>15} {'max penetration':>16}")
    for n in args.n:
        for count in (2 * n, n):
            tiles, pairs, worst = probe(n, count)
            print(f"{n:3d} {count:6d} {tiles:6d} {pairs:15d} {worst:16.4f}")


if __name__ == "__main__":
    main()
