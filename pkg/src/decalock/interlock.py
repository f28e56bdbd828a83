"""Single-tile interlocking checks: first-order contact cones and finite motion sampling.

Every check moves one tile while all the others stay put.  The sampled motions
follow the direction classes used for thin winged faces: push out, push in,
slide within the face, hinge about each pentagon edge, and spin about the face
normal.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .decahedron import Assembly, Tile
from .errors import SolverFailure
from .geom import TOL, ConvexFacet, Twist, project_and_clip, swept_first_hit, unit

DEFAULT_EPS = 0.2
DEFAULT_STEPS = 20
DEFAULT_ONFACE = 72
DEFAULT_REFINE = 8
CONE_TOL = 1e-6
PARALLEL_ANGLE = 1e-3

BLOCKED, FREE = "Blocked", "Free"
INTERLOCKED, NOT_INTERLOCKED = "Interlocked", "NotInterlocked"


# ----------------------------------------------------------------------------
# Contacts and the first-order cone
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ContactPoint:
    position: np.ndarray
    normal: np.ndarray
    moving_tile: int
    static_tile: int
    area: float


def _bounds(facets):
    pts = np.concatenate([f.vertices for f in facets])
    return pts.min(axis=0), pts.max(axis=0)


def find_contacts(a: Assembly, tile_id: int, delta_contact: float) -> list:
    """Near-parallel facet pairs within ``delta_contact`` whose footprints overlap."""
    tile = a.tile(tile_id)
    cos_tol = math.cos(PARALLEL_ANGLE)
    out = []
    for f in tile.facets:
        flo, fhi = _bounds([f])
        for other in a.others(tile_id):
            for g in other.facets:
                glo, ghi = _bounds([g])
                if np.any(flo > ghi + delta_contact) or np.any(glo > fhi + delta_contact):
                    continue
                if abs(f.normal @ g.normal) < cos_tol:
                    continue
                gap = g.signed_distance(f.vertices)
                if np.abs(gap).max() > delta_contact:
                    continue
                region = project_and_clip(g, f)
                if region is None:
                    continue
                side = 1.0 if gap.mean() >= 0 else -1.0
                normal = side * g.normal
                area = region.area
                for p in (*region.vertices, region.centroid):
                    out.append(ContactPoint(np.array(p), normal, tile_id, other.id, area))
    return out


@dataclass
class FirstOrderReport:
    tile_id: int
    contact_count: int
    static_tiles: list
    cone_trivial: bool
    optima: list
    witness: Optional[np.ndarray] = None


def constraint_rows(contacts, ref) -> np.ndarray:
    """Rows ``(arm x n, n)`` so that ``row . (omega, v)`` is the normal velocity at the contact."""
    ref = np.asarray(ref, dtype=float)
    if not contacts:
        return np.zeros((0, 6))
    pos = np.array([c.position for c in contacts])
    nrm = np.array([c.normal for c in contacts])
    return np.hstack([np.cross(pos - ref, nrm), nrm])


def cone_trivial(contacts, ref, tile_id: int = -1) -> FirstOrderReport:
    """Decide whether ``{x : A x >= 0}`` is only the zero twist, via 12 bounded LPs."""
    rows = constraint_rows(contacts, ref)
    if len(rows):
        # row scaling leaves the feasible cone unchanged and helps the solver
        rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    optima, best, witness = [], -np.inf, None
    for j in range(6):
        for sign in (1.0, -1.0):
            c = np.zeros(6)
            c[j] = -sign
            res = linprog(c, A_ub=-rows if len(rows) else None, b_ub=np.zeros(len(rows)) if len(rows) else None,
                          bounds=[(-1.0, 1.0)] * 6, method="highs")
            if res.status != 0:
                raise SolverFailure(f"LP for coordinate {j} ({'+' if sign > 0 else '-'}) failed: {res.message}")
            value = -res.fun
            optima.append(float(value))
            if value > best + 1e-12:
                best, witness = value, res.x
    trivial = all(v <= CONE_TOL for v in optima)
    if not trivial:
        witness = witness / np.abs(witness).max()
    static = sorted({c.static_tile for c in contacts})
    return FirstOrderReport(tile_id, len(contacts), static, trivial, optima, None if trivial else witness)


# ----------------------------------------------------------------------------
# Motion samples
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MotionSample:
    label: str
    generator: Twist
    angle: Optional[float] = None
    edge: Optional[int] = None
    sense: Optional[str] = None

    @property
    def name(self) -> str:
        if self.label == "OnFace":
            return f"OnFace({self.angle:g})"
        if self.label == "EdgeRotation":
            return f"EdgeRotation({self.edge},{self.sense})"
        if self.label == "NormalRotation":
            return f"NormalRotation({self.sense})"
        return self.label


def _reach(tile: Tile, twist: Twist) -> float:
    """Largest first-order speed over the tile's vertices."""
    pts = tile.points
    return float(np.linalg.norm(twist.vel + np.cross(twist.omega, pts - twist.ref_point), axis=1).max())


def motion_path(tile: Tile, twist: Twist, eps_max: float):
    """``t -> motion`` scaled so the fastest vertex travels ``eps_max`` (to first order) by ``t = 1``."""
    scale = eps_max / _reach(tile, twist)
    return lambda t: twist.motion(t * scale)


def in_plane_basis(tile: Tile):
    n = tile.outward
    e = tile.boundary[1] - tile.boundary[0]
    u = unit(e - (e @ n) * n)
    return u, np.cross(n, u)


def motion_samples(tile: Tile, n_onface: int = DEFAULT_ONFACE) -> list:
    n = tile.outward
    c = tile.centroid
    samples = [MotionSample("OutwardTranslation", Twist.translation(n, c)),
               MotionSample("InwardTranslation", Twist.translation(-n, c))]
    u, v = in_plane_basis(tile)
    for i in range(n_onface):
        ang = 360.0 * i / n_onface
        r = math.radians(ang)
        samples.append(MotionSample("OnFace", Twist.translation(math.cos(r) * u + math.sin(r) * v, c), angle=ang))
    for i in range(len(tile.boundary)):
        a, b = tile.edge(i)
        axis = unit(b - a)
        # 'out' lifts the face centre along the outward normal
        if np.cross(axis, c - a) @ n < 0:
            axis = -axis
        samples.append(MotionSample("EdgeRotation", Twist.rotation(axis, a), edge=i, sense="out"))
        samples.append(MotionSample("EdgeRotation", Twist.rotation(-axis, a), edge=i, sense="in"))
    samples.append(MotionSample("NormalRotation", Twist.rotation(n, c), sense="+"))
    samples.append(MotionSample("NormalRotation", Twist.rotation(-n, c), sense="-"))
    return samples


# ----------------------------------------------------------------------------
# Finite sampling
# ----------------------------------------------------------------------------


@dataclass
class SampleOutcome:
    sample: str
    blocked_at: Optional[float]

    @property
    def free(self) -> bool:
        return self.blocked_at is None


@dataclass
class BlockReport:
    tile_id: int
    outcomes: list
    eps_max: float
    verdict: str
    witness: Optional[str] = None
    free_play: float = 0.0
    evidence: str = ""

    def blocked_at(self, name: str) -> Optional[float]:
        for o in self.outcomes:
            if o.sample == name:
                return o.blocked_at
        raise KeyError(name)


def nearby_obstacles(a: Assembly, tile: Tile, reach: float):
    lo, hi = _bounds(tile.facets)
    lo, hi = lo - reach, hi + reach
    out = []
    for other in a.others(tile.id):
        for g in other.facets:
            glo, ghi = _bounds([g])
            if np.all(glo <= hi) and np.all(lo <= ghi):
                out.append(g)
    return out


def run_sample(tile: Tile, sample: MotionSample, obstacles, eps_max: float, steps: int,
               refine: int = DEFAULT_REFINE, tol: float = TOL) -> Optional[float]:
    return swept_first_hit(list(tile.facets), motion_path(tile, sample.generator, eps_max),
                           obstacles, steps, tol, refine)


def lemma_suite(a: Assembly, tile_id: int, eps_max: float = DEFAULT_EPS, steps: int = DEFAULT_STEPS,
                n_onface: int = DEFAULT_ONFACE, refine: int = DEFAULT_REFINE, tol: float = TOL) -> BlockReport:
    """Sample every motion class for one tile with all other tiles fixed."""
    if tile_id in a.fixed:
        raise ValueError(f"tile {tile_id} is fixed")
    if n_onface < 8:
        raise ValueError("n_onface must be >= 8")
    if eps_max <= a.params.clearance:
        raise ValueError("eps_max must exceed the build clearance")
    tile = a.tile(tile_id)
    obstacles = nearby_obstacles(a, tile, 2.0 * eps_max)
    outcomes = []
    for sample in motion_samples(tile, n_onface):
        outcomes.append(SampleOutcome(sample.name, run_sample(tile, sample, obstacles, eps_max, steps, refine, tol)))
    free = [o for o in outcomes if o.free]
    blocked = [o.blocked_at for o in outcomes if not o.free]
    play = max(blocked) * eps_max if blocked else 0.0
    if free:
        return BlockReport(tile_id, outcomes, eps_max, FREE, free[0].sample, play,
                           "constructive: a sampled motion reaches full displacement without crossing")
    return BlockReport(tile_id, outcomes, eps_max, BLOCKED, None, play,
                       f"sampled: {len(outcomes)} motions, {steps} steps each, blocked within {play:.4g}")


def free_play(a: Assembly, tile_id: int, generator: Twist, eps_max: float = DEFAULT_EPS,
              steps: int = DEFAULT_STEPS, refine: int = DEFAULT_REFINE, tol: float = TOL) -> float:
    """Displacement at which ``generator`` first hits another tile, or ``inf``."""
    tile = a.tile(tile_id)
    obstacles = nearby_obstacles(a, tile, 2.0 * eps_max)
    t = swept_first_hit(list(tile.facets), motion_path(tile, generator, eps_max), obstacles, steps, tol, refine)
    return math.inf if t is None else t * eps_max


# ----------------------------------------------------------------------------
# Whole-assembly verification
# ----------------------------------------------------------------------------


@dataclass
class TileReport:
    block: BlockReport
    first_order: FirstOrderReport


@dataclass
class VerifyParams:
    eps_max: float = DEFAULT_EPS
    steps: int = DEFAULT_STEPS
    n_onface: int = DEFAULT_ONFACE
    delta_contact: Optional[float] = None
    refine: int = DEFAULT_REFINE


@dataclass
class TheoremReport:
    tiles: dict
    verdict: str
    params: VerifyParams
    free_tiles: list = field(default_factory=list)


def check_tile(a: Assembly, tile_id: int, params: VerifyParams) -> TileReport:
    dc = params.delta_contact if params.delta_contact is not None else 2.0 * a.params.clearance
    tile = a.tile(tile_id)
    contacts = find_contacts(a, tile_id, dc)
    fo = cone_trivial(contacts, tile.centroid, tile_id)
    block = lemma_suite(a, tile_id, params.eps_max, params.steps, params.n_onface, params.refine)
    return TileReport(block, fo)


def _check_tile_job(args):
    return check_tile(*args)


def worker_count() -> int:
    env = os.environ.get("INTERLOCK_THREADS")
    cpus = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cpus))
        except ValueError:
            pass
    return cpus


def verify_assembly(a: Assembly, params: Optional[VerifyParams] = None, workers: Optional[int] = None,
                    progress=None) -> TheoremReport:
    """Check every non-fixed tile with all others fixed; Interlocked iff all are Blocked."""
    params = params or VerifyParams()
    ids = [t.id for t in a.tiles if t.id not in a.fixed]
    workers = worker_count() if workers is None else workers
    results = {}
    if workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for tid, rep in zip(ids, pool.map(_check_tile_job, [(a, tid, params) for tid in ids])):
                results[tid] = rep
                if progress:
                    progress(tid, rep)
    else:
        for tid in ids:
            results[tid] = check_tile(a, tid, params)
            if progress:
                progress(tid, results[tid])
    results = dict(sorted(results.items()))
    free = [tid for tid, r in results.items() if r.block.verdict == FREE]
    verdict = INTERLOCKED if ids and not free else NOT_INTERLOCKED
    return TheoremReport(results, verdict, params, free)
