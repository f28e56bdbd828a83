"""Command line: build, verify, export and inspect scenes.

Exit codes: 0 success or Interlocked, 2 Free tiles found, 3 build overlap,
4 input or usage error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import io as sio
from .decahedron import (DEFAULT_CLEARANCE, DEFAULT_MARGIN, DEFAULT_WING, BuildParams,
                         RelationSpec, build_chain, build_necklace, find_overlaps)
from .errors import BuildOverlap, DecalockError
from .interlock import (DEFAULT_EPS, DEFAULT_ONFACE, DEFAULT_STEPS, FREE, INTERLOCKED,
                        VerifyParams, find_contacts, verify_assembly)

EXIT_OK, EXIT_FREE, EXIT_OVERLAP, EXIT_INPUT = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _ids(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated tile ids, got {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="decalock", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a chain or necklace scene")
    b.add_argument("kind", choices=("chain", "necklace"))
    b.add_argument("--count", type=int, help="number of decahedra (necklace default: 2n)")
    b.add_argument("--n", type=int, help="necklace period")
    b.add_argument("--wing", type=float, default=DEFAULT_WING)
    b.add_argument("--clearance", type=float, default=DEFAULT_CLEARANCE)
    b.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    b.add_argument("--decagon", action="store_true", help="add a decagon insert per decahedron")
    b.add_argument("--relation", metavar="FILE", help="blocking relation overrides")
    b.add_argument("--no-wings", action="store_true", help="disable every wing (negative control)")
    b.add_argument("-o", "--output", required=True, metavar="SCENE")

    v = sub.add_parser("verify", help="check that every non-fixed tile is blocked")
    v.add_argument("scene")
    v.add_argument("--fix-ends", action="store_true", help="fix the first and last decahedron")
    v.add_argument("--fix", type=_ids, default=[], metavar="ID,ID...")
    v.add_argument("--eps", type=float, default=DEFAULT_EPS)
    v.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    v.add_argument("--onface", type=int, default=DEFAULT_ONFACE)
    v.add_argument("--workers", type=int, default=None, help="process count (default: INTERLOCK_THREADS or all cpus)")
    v.add_argument("--report", required=True, metavar="OUT")

    e = sub.add_parser("export", help="write OBJ or binary STL")
    e.add_argument("scene")
    e.add_argument("--format", choices=("obj", "stl"), required=True)
    e.add_argument("-o", "--output", required=True, metavar="FILE")

    i = sub.add_parser("inspect", help="print counts, planarity defects and overlaps")
    i.add_argument("scene")
    return p


def _print_overlaps(overlaps, out=None):
    out = out or sys.stdout
    print(f"overlap: {len(overlaps)} crossing tile pair(s)", file=out)
    for a, b, pen in overlaps:
        print(f"  tile {a} x tile {b}  penetration {pen:.6g}", file=out)


def cmd_build(args) -> int:
    if args.no_wings and args.relation:
        raise DecalockError("--no-wings and --relation are mutually exclusive")
    relation = RelationSpec()
    if args.relation:
        relation = sio.load_relation(args.relation)
    if args.no_wings:
        relation = RelationSpec.none()
    params = BuildParams(wing=args.wing, clearance=args.clearance, margin=args.margin,
                         decagon=args.decagon, relation=relation)
    try:
        if args.kind == "chain":
            if args.count is None:
                raise DecalockError("build chain needs --count")
            asm = build_chain(args.count, params)
        else:
            if args.n is None:
                raise DecalockError("build necklace needs --n")
            asm = build_necklace(args.n, args.count, params)
    except BuildOverlap as exc:
        _print_overlaps(exc.overlaps)
        return EXIT_OVERLAP
    sio.write_scene(asm, args.output)
    print(f"wrote {args.output}: {len(asm.tiles)} tiles, "
          f"{sum(len(t.wings) for t in asm.tiles)} wings")
    return EXIT_OK


def cmd_verify(args) -> int:
    asm, text = sio.read_scene(args.scene)
    fixed = set(asm.fixed) | set(args.fix)
    if args.fix_ends:
        fixed |= asm.end_tiles()
    unknown = fixed - set(asm.ids)
    if unknown:
        raise DecalockError(f"--fix names unknown tile ids {sorted(unknown)}")
    asm = asm.with_fixed(fixed)
    params = VerifyParams(eps_max=args.eps, steps=args.steps, n_onface=args.onface)
    t0 = time.perf_counter()
    report = verify_assembly(asm, params, workers=args.workers)
    wall = time.perf_counter() - t0
    doc = sio.report_document(asm, report, sio.scene_digest(text), wall)
    sio.write_report(doc, args.report)
    print(f"{report.verdict}: {len(report.tiles)} tiles checked, {len(asm.fixed)} fixed, {wall:.1f} s")
    for tid in report.free_tiles:
        print(f"  tile {tid} Free, witness {report.tiles[tid].block.witness}")
    if report.verdict == INTERLOCKED:
        return EXIT_OK
    return EXIT_FREE if any(r.block.verdict == FREE for r in report.tiles.values()) else EXIT_INPUT


def cmd_export(args) -> int:
    asm, _ = sio.read_scene(args.scene)
    data = sio.export_mesh(asm, args.format)
    with open(args.output, "wb") as fh:
        fh.write(data)
    print(f"wrote {args.output} ({len(data)} bytes)")
    return EXIT_OK


def cmd_inspect(args) -> int:
    asm, text = sio.read_scene(args.scene)
    p = asm.params
    n_facets = sum(len(t.facets) for t in asm.tiles)
    n_wings = sum(len(t.wings) for t in asm.tiles)
    dc = 2.0 * p.clearance
    n_contacts = sum(len(find_contacts(asm, t.id, dc)) for t in asm.tiles)
    print(f"scene {args.scene}  sha256 {sio.scene_digest(text)}")
    print(f"kind {p.kind}  decahedra {len(asm.decahedron_indices())}  tiles {len(asm.tiles)}  "
          f"fixed {len(asm.fixed)}")
    print(f"facets {n_facets}  wings {n_wings}  contact points {n_contacts} (delta_contact {dc:g})")
    defects = asm.planarity_defects()
    for role in ("lower", "upper"):
        vals = [d for tid, d in defects.items() if asm.tile(tid).role == role]
        if vals:
            print(f"planarity defect {role}: min {min(vals):.9g} max {max(vals):.9g}")
    overlaps = find_overlaps(asm)
    if overlaps:
        _print_overlaps(overlaps)
        return EXIT_OVERLAP
    print("overlap: none")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "export": cmd_export, "inspect": cmd_inspect}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (DecalockError, OSError, ValueError) as exc:
        print(f"decalock {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
