"""Winged decahedra, chains and necklaces built from closed-form ring coordinates.

A decahedron is four five-point rings (radii 2, 3, 3, 2) stacked one unit apart.
Its ten pentagonal faces form a lower belt ``L_s = (P1_s, P1_{s+1}, P2_{s+1},
P3_s, P2_s)`` and an upper belt ``U_s = (P4_s, P4_{s+1}, P3_{s+1}, P2_{s+1}, P3_s)``.
Faces are stored with an outward winding, so the upper-belt outlines are the
reverse of those tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np
import shapely
from shapely.geometry import Polygon

from .errors import (BuildOverlap, ClearanceTooLarge, EmptySection, NotABeltFace,
                     WingOverflow, BuildError)
from .geom import (TOL, ConvexFacet, RigidMotion, _clip_halfplane, _tidy_polygon,
                   newell_normal, sat_penetration, unit)

DEFAULT_WING = 0.4
DEFAULT_CLEARANCE = 0.02
DEFAULT_MARGIN = 0.05

LOWER, UPPER, DECAGON, CUSTOM = "lower", "upper", "decagon", "custom"

# Orbits of the default blocking relation, named cover->covered.
ORBITS = ("LL", "UU", "UL", "LU", "RIM")


# ----------------------------------------------------------------------------
# Rings and decahedra
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    """Five points ``(r cos((o + 2s)pi/5), r sin((o + 2s)pi/5), z)``; ``o`` counts pi/5 steps."""

    radius: float
    offset: int
    z: float = 0.0

    def angle_index(self, s: int) -> int:
        return (self.offset + 2 * s) % 10


def ring_vertices(spec: RingSpec) -> np.ndarray:
    if spec.radius <= 0:
        raise ValueError("ring radius must be positive")
    out = np.empty((5, 3))
    for s in range(5):
        a = spec.angle_index(s) * math.pi / 5
        out[s] = (spec.radius * math.cos(a), spec.radius * math.sin(a), spec.z)
    return out


def parity(k: int) -> int:
    return k % 2


def ring_specs(k: int, z_base: float = 0.0, flat: bool = False):
    """Rings of decahedron ``k``: radii (2, 3, 3, 2), offsets r(k), r(k), r(k)+1, r(k)+1."""
    r = parity(k)
    radii = (2.0, 3.0, 3.0, 2.0)
    offsets = (r, r, r + 1, r + 1)
    return tuple(RingSpec(radii[l], offsets[l], 0.0 if flat else z_base + l) for l in range(4))


@dataclass(frozen=True, eq=False)
class DecahedronSpec:
    k: int
    rings: tuple                       # four RingSpec, bottom to top
    placements: tuple = ()             # optional RigidMotion per ring

    @property
    def parity(self) -> int:
        return parity(self.k)

    @property
    def horizontal(self) -> bool:
        return not self.placements

    def ring(self, l: int) -> np.ndarray:
        v = ring_vertices(self.rings[l])
        if self.placements:
            v = self.placements[l].apply(v)
        return v

    @property
    def vertices(self) -> np.ndarray:
        return np.stack([self.ring(l) for l in range(4)])

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.reshape(-1, 3).mean(axis=0)

    def face(self, role: str, s: int) -> np.ndarray:
        """Outline of ``L_s`` or ``U_s``, wound counter-clockwise seen from outside."""
        p = self.vertices
        s1 = (s + 1) % 5
        if role == LOWER:
            return np.stack([p[0, s], p[0, s1], p[1, s1], p[2, s], p[1, s]])
        if role == UPPER:
            return np.stack([p[2, s], p[1, s1], p[2, s1], p[3, s1], p[3, s]])
        raise ValueError(role)

    def faces(self):
        return [(role, s, self.face(role, s)) for role in (LOWER, UPPER) for s in range(5)]


def build_decahedron(k: int, z_base: float = 0.0) -> DecahedronSpec:
    if k < 1:
        raise ValueError("decahedron index k must be >= 1")
    return DecahedronSpec(k, ring_specs(k, z_base))


def necklace_decahedron(k: int, n: int) -> DecahedronSpec:
    """Rings lie in the plane z=0 and are rotated about the x-axis by (3(k-1)+l) 2pi/(3n)."""
    if k < 1:
        raise ValueError("decahedron index k must be >= 1")
    placements = tuple(RigidMotion.rotation_x((3 * (k - 1) + l) * 2 * math.pi / (3 * n)) for l in range(4))
    return DecahedronSpec(k, ring_specs(k, flat=True), placements)


def planarity_defect(outline: np.ndarray) -> float:
    """Largest distance from an outline vertex to its least-squares plane."""
    c = outline - outline.mean(axis=0)
    normal = np.linalg.svd(c)[2][-1]
    return float(np.abs(c @ normal).max())


# ----------------------------------------------------------------------------
# Blocking relation
# ----------------------------------------------------------------------------

FaceKey = tuple  # (k, role, s)


@dataclass(frozen=True)
class RelationSpec:
    """Data form of a blocking relation: which orbits are reversed or dropped."""

    flips: frozenset = frozenset()
    disabled: frozenset = frozenset()

    def __post_init__(self):
        bad = (set(self.flips) | set(self.disabled)) - set(ORBITS)
        if bad:
            raise ValueError(f"unknown relation orbit(s): {sorted(bad)}")
        # flipping a dropped orbit means nothing; keep the canonical form
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        object.__setattr__(self, "flips", frozenset(self.flips) - self.disabled)

    @classmethod
    def none(cls) -> "RelationSpec":
        return cls(disabled=frozenset(ORBITS))

    @property
    def is_default(self) -> bool:
        return not self.flips and not self.disabled


@dataclass(frozen=True)
class BlockingRelation:
    """Directed ``cover -> covered`` face pairs; at most one direction per shared edge."""

    pairs: frozenset

    def covers(self, face: FaceKey):
        return sorted(q for p, q in self.pairs if p == face)

    def covered_by(self, face: FaceKey):
        return sorted(p for p, q in self.pairs if q == face)

    def __len__(self):
        return len(self.pairs)


def _same_points(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    return bool(np.abs(a - b).max() <= tol)


def rim_matches(lower: DecahedronSpec, upper: DecahedronSpec, tol: float = 1e-9):
    """Map ``s -> j`` with U_s's rim edge of ``lower`` equal to L_j's rim edge of ``upper``."""
    top, bottom = lower.ring(3), upper.ring(0)
    out = {}
    for s in range(5):
        edge = {tuple(np.round(top[s], 9)), tuple(np.round(top[(s + 1) % 5], 9))}
        for j in range(5):
            other = {tuple(np.round(bottom[j], 9)), tuple(np.round(bottom[(j + 1) % 5], 9))}
            if edge == other and (_same_points(top[s], bottom[j], tol) or _same_points(top[s], bottom[(j + 1) % 5], tol)):
                out[s] = j
    return out


def rim_neighbours(decahedra: Sequence[DecahedronSpec], closed: Optional[bool] = None):
    """Consecutive pairs sharing a rim; a closing pair is added when its rings coincide."""
    pairs = [(decahedra[i], decahedra[i + 1]) for i in range(len(decahedra) - 1)]
    if len(decahedra) > 2 and closed is not False:
        last, first = decahedra[-1], decahedra[0]
        if _same_points(np.sort(last.ring(3), axis=0), np.sort(first.ring(0), axis=0)):
            pairs.append((last, first))
    return pairs


def default_blocking_relation(decahedra: Sequence[DecahedronSpec],
                              spec: RelationSpec = RelationSpec()) -> BlockingRelation:
    """Z5-equivariant relation: L_s > L_{s+1}, U_s > U_{s+1}, U_s > L_s, L_s > U_{s-1}, U(k) > L(k+1)."""
    pairs = set()

    def add(orbit, p, q):
        if orbit in spec.disabled:
            return
        pairs.add((q, p) if orbit in spec.flips else (p, q))

    for d in decahedra:
        k = d.k
        for s in range(5):
            add("LL", (k, LOWER, s), (k, LOWER, (s + 1) % 5))
            add("UU", (k, UPPER, s), (k, UPPER, (s + 1) % 5))
            add("UL", (k, UPPER, s), (k, LOWER, s))
            add("LU", (k, LOWER, s), (k, UPPER, (s - 1) % 5))
    for lo, hi in rim_neighbours(decahedra):
        for s, j in rim_matches(lo, hi).items():
            add("RIM", (lo.k, UPPER, s), (hi.k, LOWER, j))
    return BlockingRelation(frozenset(pairs))


# ----------------------------------------------------------------------------
# Tiles and assemblies
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Tile:
    id: int
    k: int
    role: str
    s: Optional[int]
    facets: tuple
    outline: Optional[np.ndarray] = None

    @property
    def key(self) -> FaceKey:
        return (self.k, self.role, self.s)

    @property
    def is_belt(self) -> bool:
        return self.role in (LOWER, UPPER) and self.outline is not None

    @property
    def boundary(self) -> np.ndarray:
        """Outline if known, else the first facet's vertices."""
        return self.outline if self.outline is not None else self.facets[0].vertices

    @property
    def centroid(self) -> np.ndarray:
        return self.boundary.mean(axis=0)

    @property
    def outward(self) -> np.ndarray:
        """Reference normal of the outline; for belt faces it points out of the decahedron."""
        return unit(newell_normal(self.boundary))

    def edge(self, i: int):
        o = self.boundary
        return o[i], o[(i + 1) % len(o)]

    @property
    def body(self):
        return [f for f in self.facets if not f.tag.startswith("wing")]

    @property
    def wings(self):
        return [f for f in self.facets if f.tag.startswith("wing")]

    @property
    def points(self) -> np.ndarray:
        return np.concatenate([f.vertices for f in self.facets])


@dataclass(frozen=True)
class BuildParams:
    kind: str = "chain"
    count: int = 1
    n: Optional[int] = None
    wing: float = DEFAULT_WING
    clearance: float = DEFAULT_CLEARANCE
    margin: float = DEFAULT_MARGIN
    decagon: bool = False
    relation: RelationSpec = field(default_factory=RelationSpec)


@dataclass(frozen=True, eq=False)
class Assembly:
    tiles: tuple
    params: BuildParams = field(default_factory=BuildParams)
    fixed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "fixed", frozenset(self.fixed))
        ids = [t.id for t in self.tiles]
        if len(set(ids)) != len(ids):
            raise BuildError("duplicate tile ids")
        missing = self.fixed - set(ids)
        if missing:
            raise BuildError(f"fixed tile ids not in assembly: {sorted(missing)}")

    def tile(self, tile_id: int) -> Tile:
        for t in self.tiles:
            if t.id == tile_id:
                return t
        raise KeyError(tile_id)

    @property
    def ids(self):
        return [t.id for t in self.tiles]

    def with_fixed(self, ids: Iterable[int]) -> "Assembly":
        return replace(self, fixed=frozenset(ids))

    def decahedron_indices(self):
        return sorted({t.k for t in self.tiles})

    def end_tiles(self):
        """Tile ids of the first and last decahedron."""
        ks = self.decahedron_indices()
        if not ks:
            return frozenset()
        ends = {ks[0], ks[-1]}
        return frozenset(t.id for t in self.tiles if t.k in ends)

    def others(self, tile_id: int):
        return [t for t in self.tiles if t.id != tile_id]

    def planarity_defects(self):
        return {t.id: planarity_defect(t.outline) for t in self.tiles if t.is_belt}


def _fan(outline: np.ndarray, center: np.ndarray):
    return [ConvexFacet(np.stack([center, outline[i], outline[(i + 1) % len(outline)]]), f"body:{i}")
            for i in range(len(outline))]


def _edge_index(outline: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    for i in range(len(outline)):
        u, v = outline[i], outline[(i + 1) % len(outline)]
        if (_same_points(u, a) and _same_points(v, b)) or (_same_points(u, b) and _same_points(v, a)):
            return i
    raise BuildError("faces do not share an edge")


def _shared_edge(p: np.ndarray, q: np.ndarray):
    for i in range(len(p)):
        a, b = p[i], p[(i + 1) % len(p)]
        try:
            _edge_index(q, a, b)
        except BuildError:
            continue
        return i, a, b
    raise BuildError("faces do not share an edge")


def wing_facet(cover_outline: np.ndarray, covered_outline: np.ndarray,
               w: float, delta: float, m: float) -> ConvexFacet:
    """Flap of ``cover`` lying over the boundary triangle of ``covered`` at their shared edge."""
    i, a, b = _shared_edge(cover_outline, covered_outline)
    j = _edge_index(covered_outline, a, b)
    c = covered_outline.mean(axis=0)
    ea, eb = covered_outline[j], covered_outline[(j + 1) % 5]
    tri_normal = unit(np.cross(ea - c, eb - c))        # outward, by the outline winding
    t = unit(b - a)
    length = float(np.linalg.norm(b - a))
    if not 0 <= m < 0.5 * length:
        raise BuildError(f"margin {m} must be below half the edge length {0.5 * length:.4f}")
    d = np.cross(tri_normal, t)
    if (c - a) @ d < 0:
        d = -d
    # 2-D frame on the covered triangle: x along the edge from a, y towards its centroid
    apex = np.array([(c - a) @ t, (c - a) @ d])
    tri = np.array([[0.0, 0.0], [length, 0.0], apex])
    rect = np.array([[m, 0.0], [length - m, 0.0], [length - m, w], [m, w]])
    inset = []
    for p0, p1 in ((tri[1], tri[2]), (tri[2], tri[0])):
        e = unit(p1 - p0)
        shift = np.array([-e[1], e[0]]) * m
        inset.append((p0 + shift, p1 + shift))
    poly = list(rect)
    for p0, p1 in inset:
        poly = _tidy_polygon(_clip_halfplane(poly, p0, p1, 0.0), 1e-12)
    if len(poly) < 3:
        raise WingOverflow("wing vanishes inside the covered face")
    poly = np.array(poly)
    if poly[:, 1].max() < w - 1e-9:
        raise WingOverflow(f"wing width {w} exceeds the available depth {poly[:, 1].max():.4f} of the covered face")
    pts = a + poly[:, :1] * t + poly[:, 1:2] * d + delta * tri_normal
    if np.cross(t, d) @ tri_normal < 0:
        pts = pts[::-1]
    return ConvexFacet(pts, f"wing:{i}")


def attach_wings(d: DecahedronSpec, rel: BlockingRelation, w: float = DEFAULT_WING,
                 delta: float = DEFAULT_CLEARANCE, m: float = DEFAULT_MARGIN,
                 neighbours: Sequence[DecahedronSpec] = (), first_id: int = 0):
    """Tiles of ``d``'s ten faces with wings wherever ``rel`` says the face covers a neighbour.

    ``neighbours`` supplies the decahedra whose faces may be covered across a rim.
    """
    if w <= 0:
        raise BuildError("wing width must be positive")
    if delta <= 0:
        raise BuildError("clearance must be positive")
    if delta >= w:
        raise ClearanceTooLarge(f"clearance {delta} must be smaller than the wing width {w}")
    lookup = {(e.k, role, s): outline for e in (d, *neighbours) for role, s, outline in e.faces()}
    tiles = []
    for idx, (role, s, outline) in enumerate(d.faces()):
        facets = _fan(outline, outline.mean(axis=0))
        for q in rel.covers((d.k, role, s)):
            if q not in lookup:
                continue
            facets.append(wing_facet(outline, lookup[q], w, delta, m))
        tiles.append(Tile(first_id + idx, d.k, role, s, tuple(facets), outline))
    return tiles


# ----------------------------------------------------------------------------
# Decagon insert
# ----------------------------------------------------------------------------


def _section_points(d: DecahedronSpec, z: float) -> np.ndarray:
    """Star-ordered vertices of the fan surface's horizontal section at height ``z``."""
    pts = []
    for _, _, outline in d.faces():
        for tri in _fan(outline, outline.mean(axis=0)):
            v = tri.vertices
            for i in range(3):
                p, q = v[i], v[(i + 1) % 3]
                dp, dq = p[2] - z, q[2] - z
                if dp == 0.0:
                    pts.append(p[:2])
                if dp * dq < 0:
                    pts.append((p + (q - p) * (dp / (dp - dq)))[:2])
    if len(pts) < 3:
        raise EmptySection(f"no section at z={z}")
    pts = np.unique(np.round(np.array(pts), 12), axis=0)
    center = d.centroid[:2]
    ang = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    return pts[np.argsort(ang, kind="stable")]


def _inner_convex(star: np.ndarray) -> np.ndarray:
    """Convex hull of the reflex vertices of a star-shaped section.

    Between two reflex vertices the section bulges outwards, so the hull stays
    inside; it is shrunk about its centroid if that ever fails.
    """
    e1 = star - np.roll(star, 1, axis=0)
    e2 = np.roll(star, -1, axis=0) - star
    turn = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    reflex = star[turn < -1e-12]
    if len(reflex) < 3:
        if np.all(turn >= -1e-12):
            return star
        raise EmptySection("section has fewer than three fold points")
    room = Polygon(star).buffer(1e-9)
    cand = Polygon(reflex).convex_hull
    if not room.contains(cand):
        lo, hi = 0.0, 1.0
        c = np.array(cand.centroid.coords[0])
        base = np.array(cand.exterior.coords)[:-1]
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            if room.contains(Polygon(c + (base - c) * mid)):
                lo = mid
            else:
                hi = mid
        cand = Polygon(c + (base - c) * lo)
    return np.array(cand.exterior.coords)[:-1]


def section_polygon(d: DecahedronSpec, z: float) -> np.ndarray:
    """Convex section (counter-clockwise, 2-D) of decahedron ``d`` at height ``z``."""
    if not d.horizontal:
        raise BuildError("decagon sections need a decahedron with horizontal rings")
    poly = _inner_convex(_section_points(d, z))
    x, y = poly[:, 0], poly[:, 1]
    if (x * np.roll(y, -1) - np.roll(x, -1) * y).sum() < 0:
        poly = poly[::-1]
    return poly


def section_area(d: DecahedronSpec, z: float) -> float:
    try:
        return float(Polygon(section_polygon(d, z)).area)
    except EmptySection:
        return 0.0


def golden_max(f, lo: float, hi: float, tol: float = 1e-6) -> float:
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, e = b - invphi * (b - a), a + invphi * (b - a)
    fc, fe = f(c), f(e)
    while b - a > tol:
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + invphi * (b - a)
            fe = f(e)
    return 0.5 * (a + b)


def best_section_height(d: DecahedronSpec, tol: float = 1e-6) -> float:
    z0 = d.rings[0].z
    return golden_max(lambda z: section_area(d, z), z0, z0 + 3.0, tol)


def build_decagon_insert(d: DecahedronSpec, delta: float = DEFAULT_CLEARANCE, tile_id: int = 0) -> Tile:
    z = best_section_height(d)
    poly = Polygon(section_polygon(d, z)).buffer(-delta, join_style="mitre")
    if poly.is_empty:
        raise EmptySection("decagon vanishes after the clearance inset")
    ring = np.array(shapely.normalize(poly).exterior.coords)[:-1][::-1]
    pts = np.column_stack([ring, np.full(len(ring), z)])
    center = np.append(np.array(poly.centroid.coords[0]), z)
    facets = tuple(ConvexFacet(np.stack([center, pts[i], pts[(i + 1) % len(pts)]]), "decagon")
                   for i in range(len(pts)))
    return Tile(tile_id, d.k, DECAGON, None, facets, pts)


# ----------------------------------------------------------------------------
# Direction classes
# ----------------------------------------------------------------------------

OUTWARD, INWARD, ON_FACE = "Outward", "Inward", "OnFace"


def face_slack(tile: Tile) -> float:
    """Largest |cos| between an outline edge and the reference normal (0 for planar faces)."""
    o = tile.boundary
    e = np.roll(o, -1, axis=0) - o
    return float(np.abs(e @ tile.outward / np.linalg.norm(e, axis=1)).max())


def classify_direction(tile: Tile, w, tol: float = 1e-9) -> str:
    """Outward, Inward or OnFace relative to the tile's reference normal.

    The pentagons are slightly non-planar, so a direction counts as lying on the
    face while its slope stays within the spread of the face's own edges.
    """
    if not tile.is_belt:
        raise NotABeltFace(f"tile {tile.id} ({tile.role}) is not a belt face")
    w = np.asarray(w, dtype=float)
    norm = np.linalg.norm(w)
    if norm == 0.0:
        raise ValueError("direction must be nonzero")
    tol = tol + face_slack(tile)
    dot = float(w @ tile.outward) / norm
    if dot > tol:
        return OUTWARD
    if dot < -tol:
        return INWARD
    return ON_FACE


# ----------------------------------------------------------------------------
# Validation and builders
# ----------------------------------------------------------------------------


def find_overlaps(a: Assembly, tol: float = TOL):
    """All pairs of tiles whose facets cross, as ``(id_a, id_b, penetration)``."""
    tris, owner = [], []
    for t in a.tiles:
        for f in t.facets:
            tr = f.triangles()
            tris.append(tr)
            owner.extend([t.id] * len(tr))
    if not tris:
        return []
    tris = np.concatenate(tris)
    owner = np.array(owner)
    lo, hi = tris.min(axis=1), tris.max(axis=1)
    found = {}
    for i in range(len(tris)):
        j = np.arange(i + 1, len(tris))
        j = j[(owner[j] != owner[i]) & np.all((lo[j] <= hi[i] + tol) & (lo[i] <= hi[j] + tol), axis=1)]
        if len(j) == 0:
            continue
        pen = sat_penetration(np.repeat(tris[i:i + 1], len(j), axis=0), tris[j])
        for jj, p in zip(j[pen > tol], pen[pen > tol]):
            key = tuple(sorted((int(owner[i]), int(owner[jj]))))
            found[key] = max(found.get(key, 0.0), float(p))
    return [(ka, kb, p) for (ka, kb), p in sorted(found.items())]


def _assemble(decahedra, params: BuildParams, validate: bool, tol: float) -> Assembly:
    rel = default_blocking_relation(decahedra, params.relation)
    tiles = []
    for i, d in enumerate(decahedra):
        nbrs = [e for e in decahedra if e is not d]
        tiles.extend(attach_wings(d, rel, params.wing, params.clearance, params.margin,
                                  nbrs, first_id=10 * i))
    if params.decagon:
        for i, d in enumerate(decahedra):
            tiles.append(build_decagon_insert(d, params.clearance, tile_id=10 * len(decahedra) + i))
    asm = Assembly(tuple(tiles), params)
    if validate:
        overlaps = find_overlaps(asm, tol)
        if overlaps:
            raise BuildOverlap(overlaps)
    return asm


def build_chain(count: int, params: Optional[BuildParams] = None, validate: bool = True,
                tol: float = TOL, **kwargs) -> Assembly:
    if count < 1:
        raise ValueError("count must be >= 1")
    params = replace(params or BuildParams(**kwargs), kind="chain", count=count, n=None)
    decahedra = [build_decahedron(k, 3.0 * (k - 1)) for k in range(1, count + 1)]
    return _assemble(decahedra, params, validate, tol)


def build_necklace(n: int, count: Optional[int] = None, params: Optional[BuildParams] = None,
                   validate: bool = True, tol: float = TOL, **kwargs) -> Assembly:
    if n < 3:
        raise ValueError("necklace needs n >= 3")
    count = 2 * n if count is None else count
    params = replace(params or BuildParams(**kwargs), kind="necklace", count=count, n=n)
    if params.decagon:
        raise BuildError("decagon inserts are only defined for chains")
    decahedra = [necklace_decahedron(k, n) for k in range(1, count + 1)]
    return _assemble(decahedra, params, validate, tol)


def decahedra_of(a: Assembly):
    """Rebuild the ring skeleton of a chain or necklace assembly from its parameters."""
    p = a.params
    if p.kind == "chain":
        return [build_decahedron(k, 3.0 * (k - 1)) for k in range(1, p.count + 1)]
    if p.kind == "necklace":
        return [necklace_decahedron(k, p.n) for k in range(1, p.count + 1)]
    raise BuildError(f"no skeleton for kind {p.kind!r}")
