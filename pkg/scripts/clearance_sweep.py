"""Median interior free play of a fixed-end chain as the clearance varies.

    python scripts/clearance_sweep.py --deltas 0.01 0.02 0.04
"""

import argparse
import statistics

from decalock import build_chain
from decalock.interlock import VerifyParams, verify_assembly


def sweep(deltas, count=4, workers=None):
    rows = []
    for d in deltas:
        a = build_chain(count, clearance=d)
        a = a.with_fixed(a.end_tiles())
        rep = verify_assembly(a, VerifyParams(), workers=workers)
        plays = [r.block.free_play for r in rep.tiles.values()]
        rows.append((d, rep.verdict, statistics.median(plays), max(plays)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deltas", type=float, nargs="+", default=[0.01, 0.02, 0.04])
    ap.add_argument("--count", type=int, default=4)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    print(f"{'delta':>7} {'verdict':>14} {'median':>8} {'max':>8} {'median/delta':>13}")
    for d, verdict, med, mx in sweep(args.deltas, args.count, args.workers):
        print(f"{d:7.3f} {verdict:>14} {med:8.4f} {mx:8.4f} {med / d:13.3f}")


if __name__ == "__main__":
    main()
