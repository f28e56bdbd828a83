"""Build a chain, fix its end decahedra and verify every interior tile.

    python scripts/run_column.py --count 4 --report column.json
"""

import argparse
import statistics
import time

from decalock import build_chain
from decalock.interlock import VerifyParams, verify_assembly
from decalock.io import report_document, scene_digest, serialize_scene, write_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=4)
    ap.add_argument("--clearance", type=float, default=0.02)
    ap.add_argument("--eps", type=float, default=0.2)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--report", default=None)
    args = ap.parse_args()

    a = build_chain(args.count, clearance=args.clearance)
    a = a.with_fixed(a.end_tiles())
    t0 = time.perf_counter()
    rep = verify_assembly(a, VerifyParams(eps_max=args.eps, steps=args.steps), workers=args.workers,
                          progress=lambda tid, r: print(f"  tile {tid:3d} {r.block.verdict:8s} "
                                                        f"free_play {r.block.free_play:.4f} "
                                                        f"contacts {r.first_order.contact_count:3d} "
                                                        f"cone_trivial {r.first_order.cone_trivial}", flush=True))
    wall = time.perf_counter() - t0
    plays = [r.block.free_play for r in rep.tiles.values()]
    print(f"{rep.verdict}: {len(rep.tiles)} tiles, median free_play {statistics.median(plays):.4f}, "
          f"max {max(plays):.4f}, {wall:.1f} s")
    if args.report:
        write_report(report_document(a, rep, scene_digest(serialize_scene(a)), wall), args.report)


if __name__ == "__main__":
    main()
