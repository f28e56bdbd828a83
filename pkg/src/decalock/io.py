"""Scene text format, verification reports and mesh export.

Scene files are line oriented and canonical: floats are written with 17
significant digits, so ``parse_scene(serialize_scene(a))`` restores every
coordinate bit for bit::

    decalock-scene 1
    kind chain
    count 2
    n -
    wing 0.40000000000000002
    clearance 0.02
    margin 0.050000000000000003
    decagon 0
    relation default
    fixed 0 1
    tile 0 1 lower 0
    outline x y z x y z ...
    facet body:0 x y z x y z x y z
    end
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from typing import Optional

import numpy as np

from .decahedron import ORBITS, Assembly, BuildParams, RelationSpec, Tile
from .errors import ParseError, SchemaVersionMismatch
from .geom import ConvexFacet

SCENE_MAGIC = "decalock-scene"
SCENE_VERSION = 1
REPORT_VERSION = 1

_HEADER_KEYS = ("kind", "count", "n", "wing", "clearance", "margin", "decagon", "relation", "fixed")
_KINDS = ("chain", "necklace", "custom")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_points(pts) -> str:
    return " ".join(fmt(c) for p in np.asarray(pts) for c in p)


# ----------------------------------------------------------------------------
# Relations
# ----------------------------------------------------------------------------


def relation_text(spec: RelationSpec) -> str:
    if spec.is_default:
        return "default"
    if spec.disabled == frozenset(ORBITS):
        return "none"
    parts = []
    if spec.flips:
        parts.append("flip " + " ".join(o for o in ORBITS if o in spec.flips))
    if spec.disabled:
        parts.append("disable " + " ".join(o for o in ORBITS if o in spec.disabled))
    return " ".join(parts)


def parse_relation_words(words, line: Optional[int] = None, column: int = 1) -> RelationSpec:
    if words == ["default"]:
        return RelationSpec()
    if words == ["none"]:
        return RelationSpec.none()
    flips, disabled, bucket = set(), set(), None
    for w in words:
        if w == "flip":
            bucket = flips
        elif w == "disable":
            bucket = disabled
        elif w in ORBITS and bucket is not None:
            bucket.add(w)
        else:
            raise ParseError(f"bad relation token {w!r} (orbits: {', '.join(ORBITS)})", line, column)
    return RelationSpec(frozenset(flips), frozenset(disabled))


def load_relation(path) -> RelationSpec:
    """Relation file: ``default``, ``none``, or lines ``flip ORBIT...`` / ``disable ORBIT...``; ``#`` comments."""
    words = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].split()
            words.extend(line)
    if not words:
        return RelationSpec()
    return parse_relation_words(words)


# ----------------------------------------------------------------------------
# Scenes
# ----------------------------------------------------------------------------


def serialize_scene(a: Assembly) -> str:
    p = a.params
    lines = [f"{SCENE_MAGIC} {SCENE_VERSION}",
             f"kind {p.kind}",
             f"count {p.count}",
             f"n {p.n if p.n is not None else '-'}",
             f"wing {fmt(p.wing)}",
             f"clearance {fmt(p.clearance)}",
             f"margin {fmt(p.margin)}",
             f"decagon {int(p.decagon)}",
             f"relation {relation_text(p.relation)}",
             "fixed " + (" ".join(str(i) for i in sorted(a.fixed)) if a.fixed else "-")]
    for t in a.tiles:
        lines.append(f"tile {t.id} {t.k} {t.role} {t.s if t.s is not None else '-'}")
        if t.outline is not None:
            lines.append("outline " + _fmt_points(t.outline))
        for f in t.facets:
            lines.append(f"facet {f.tag} " + _fmt_points(f.vertices))
        lines.append("end")
    return "\n".join(lines) + "\n"


def scene_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class _Lines:
    def __init__(self, text: str):
        self.rows = []
        for i, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if body.strip():
                self.rows.append((i, raw, body.split()))
        self.pos = 0

    def peek(self):
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def next(self):
        row = self.peek()
        self.pos += 1
        return row


def _col(raw: str, word: str, start: int = 0) -> int:
    return raw.find(word, start) + 1


def _float(word: str, lineno: int, raw: str) -> float:
    try:
        x = float(word)
    except ValueError:
        raise ParseError(f"expected a number, got {word!r}", lineno, _col(raw, word)) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite number {word!r}", lineno, _col(raw, word))
    return x


def _int(word: str, lineno: int, raw: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"expected an integer, got {word!r}", lineno, _col(raw, word)) from None


def _points(words, lineno, raw, what) -> np.ndarray:
    if len(words) % 3:
        raise ParseError(f"{what}: coordinate count {len(words)} is not a multiple of 3", lineno, 1)
    vals = [_float(w, lineno, raw) for w in words]
    return np.array(vals, dtype=float).reshape(-1, 3)


def parse_scene(text: str) -> Assembly:
    rows = _Lines(text)
    first = rows.next()
    if first is None:
        raise ParseError("empty scene", 1, 1)
    lineno, raw, words = first
    if words[0] != SCENE_MAGIC or len(words) != 2:
        raise ParseError(f"expected '{SCENE_MAGIC} <version>'", lineno, 1)
    version = _int(words[1], lineno, raw)
    if version != SCENE_VERSION:
        raise SchemaVersionMismatch(f"scene version {version}, expected {SCENE_VERSION}", lineno, _col(raw, words[1]))

    header = {}
    while rows.peek() is not None and rows.peek()[2][0] != "tile":
        lineno, raw, words = rows.next()
        key = words[0]
        if key not in _HEADER_KEYS:
            raise ParseError(f"unknown field {key!r}", lineno, _col(raw, key))
        if key in header:
            raise ParseError(f"duplicate field {key!r}", lineno, _col(raw, key))
        header[key] = (lineno, raw, words[1:])
    missing = [k for k in _HEADER_KEYS if k not in header]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}", lineno, 1)

    def single(key):
        ln, rw, vals = header[key]
        if len(vals) != 1:
            raise ParseError(f"field {key!r} takes one value", ln, 1)
        return vals[0], ln, rw

    kind, ln, rw = single("kind")
    if kind not in _KINDS:
        raise ParseError(f"unknown kind {kind!r}", ln, _col(rw, kind, len(rw.split()[0])))
    count = _int(*single("count"))
    nval, ln, rw = single("n")
    n = None if nval == "-" else _int(nval, ln, rw)
    wing = _float(*single("wing"))
    clearance = _float(*single("clearance"))
    margin = _float(*single("margin"))
    decagon = _int(*single("decagon")) != 0
    ln, rw, rel_words = header["relation"]
    relation = parse_relation_words(rel_words, ln, _col(rw, rel_words[0]) if rel_words else 1)
    ln, rw, fixed_words = header["fixed"]
    fixed = set() if fixed_words == ["-"] else {_int(w, ln, rw) for w in fixed_words}
    params = BuildParams(kind, count, n, wing, clearance, margin, decagon, relation)

    tiles = []
    while rows.peek() is not None:
        lineno, raw, words = rows.next()
        if words[0] != "tile":
            raise ParseError(f"unknown field {words[0]!r}", lineno, _col(raw, words[0]))
        if len(words) != 5:
            raise ParseError("tile line needs: tile <id> <k> <role> <s>", lineno, 1)
        tid = _int(words[1], lineno, raw)
        k = _int(words[2], lineno, raw)
        role = words[3]
        s = None if words[4] == "-" else _int(words[4], lineno, raw)
        outline, facets = None, []
        while True:
            row = rows.next()
            if row is None:
                raise ParseError(f"tile {tid}: missing 'end'", lineno, 1)
            ln, rw, ws = row
            if ws[0] == "end":
                break
            if ws[0] == "outline":
                outline = _points(ws[1:], ln, rw, f"tile {tid} outline")
                if len(outline) < 3:
                    raise ParseError(f"tile {tid}: outline has {len(outline)} vertices, needs >= 3", ln, 1)
            elif ws[0] == "facet":
                if len(ws) < 2:
                    raise ParseError(f"tile {tid}: facet needs a tag", ln, 1)
                pts = _points(ws[2:], ln, rw, f"tile {tid} facet")
                if len(pts) < 3:
                    raise ParseError(f"tile {tid}: facet '{ws[1]}' has {len(pts)} vertices, needs >= 3", ln, _col(rw, ws[1]))
                facets.append(ConvexFacet(pts, ws[1]))
            else:
                raise ParseError(f"tile {tid}: unknown field {ws[0]!r}", ln, _col(rw, ws[0]))
        if not facets:
            raise ParseError(f"tile {tid}: no facets", lineno, 1)
        tiles.append(Tile(tid, k, role, s, tuple(facets), outline))
    if not tiles:
        raise ParseError("no tiles", lineno, 1)
    ids = {t.id for t in tiles}
    if len(ids) != len(tiles):
        raise ParseError("duplicate tile ids", None, None)
    unknown = fixed - ids
    if unknown:
        ln, rw, _ = header["fixed"]
        raise ParseError(f"fixed ids not in scene: {sorted(unknown)}", ln, 1)
    return Assembly(tuple(tiles), params, frozenset(fixed))


def write_scene(a: Assembly, path) -> str:
    text = serialize_scene(a)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


def read_scene(path):
    """Return ``(assembly, text)``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scene(text), text


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def report_document(a: Assembly, report, digest: str, wall_clock: float) -> dict:
    """JSON-ready report; every scene tile appears once, fixed tiles without checks."""
    p = report.params
    tiles = []
    for t in a.tiles:
        entry = {"id": t.id, "k": t.k, "role": t.role, "s": t.s, "fixed": t.id in a.fixed}
        tr = report.tiles.get(t.id)
        if tr is not None:
            b, fo = tr.block, tr.first_order
            entry["block"] = {
                "verdict": b.verdict,
                "witness": b.witness,
                "free_play": _num(b.free_play),
                "evidence": b.evidence,
                "samples": [{"sample": o.sample, "blocked_at": _num(o.blocked_at)} for o in b.outcomes],
            }
            entry["first_order"] = {
                "contact_count": fo.contact_count,
                "static_tiles": fo.static_tiles,
                "cone_trivial": fo.cone_trivial,
                "optima": [_num(v) for v in fo.optima],
                "witness": None if fo.witness is None else [_num(v) for v in fo.witness],
            }
        tiles.append(entry)
    return {
        "schema": REPORT_VERSION,
        "scene_digest": digest,
        "verdict": report.verdict,
        "free_tiles": report.free_tiles,
        "fixed_tiles": sorted(a.fixed),
        "params": {"eps_max": p.eps_max, "steps": p.steps, "n_onface": p.n_onface,
                   "delta_contact": p.delta_contact if p.delta_contact is not None else 2.0 * a.params.clearance,
                   "refine": p.refine, "clearance": a.params.clearance, "wing": a.params.wing,
                   "margin": a.params.margin},
        "wall_clock_s": wall_clock,
        "tiles": tiles,
    }


def write_report(doc: dict, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


# ----------------------------------------------------------------------------
# Meshes
# ----------------------------------------------------------------------------


def _fan(vertices: np.ndarray):
    return [(0, i, i + 1) for i in range(1, len(vertices) - 1)]


def export_obj(a: Assembly) -> bytes:
    out = []
    base = 1
    for t in a.tiles:
        out.append(f"o tile_{t.id}")
        faces = []
        for f in t.facets:
            for p in f.vertices:
                out.append("v " + " ".join(fmt(c) for c in p))
            faces.extend(f"f {base + i} {base + j} {base + k}" for i, j, k in _fan(f.vertices))
            base += len(f.vertices)
        out.extend(faces)
    return ("\n".join(out) + "\n").encode("ascii")


def mesh_triangles(a: Assembly) -> np.ndarray:
    tris = [f.vertices[list(idx)] for t in a.tiles for f in t.facets for idx in _fan(f.vertices)]
    return np.array(tris, dtype=float).reshape(-1, 3, 3)


def export_stl(a: Assembly, header: bytes = b"decalock binary STL") -> bytes:
    tris = mesh_triangles(a)
    normals = np.cross(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0])
    lengths = np.linalg.norm(normals, axis=1, keepdims=True)
    normals = np.divide(normals, lengths, out=np.zeros_like(normals), where=lengths > 0)
    record = np.dtype([("normal", "<f4", 3), ("v", "<f4", (3, 3)), ("attr", "<u2")])
    data = np.zeros(len(tris), dtype=record)
    data["normal"] = normals
    data["v"] = tris
    return header[:80].ljust(80, b"\0") + struct.pack("<I", len(tris)) + data.tobytes()


def export_mesh(a: Assembly, format: str) -> bytes:
    if format == "obj":
        return export_obj(a)
    if format in ("stl", "stl-binary"):
        return export_stl(a)
    raise ValueError(f"unknown mesh format {format!r}")
