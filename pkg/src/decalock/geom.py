"""Vector algebra, rigid motions and convex-facet predicates.

Points are plain ``numpy`` arrays of shape ``(3,)``; batches are ``(..., 3)``.
Every predicate takes a tolerance, defaulting to :data:`TOL`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import DegenerateFacet, GeometryError, NotCoplanar, StepTooCoarse

TOL = 1e-7

Vec3 = np.ndarray


def vec3(x, y, z) -> Vec3:
    return np.array([x, y, z], dtype=float)


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise GeometryError("cannot normalize a zero vector")
    return v / n


# ----------------------------------------------------------------------------
# Rigid motions and twists
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RigidMotion:
    """``p -> rotation @ p + translation``."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=float).reshape(3, 3))
        object.__setattr__(self, "translation", np.asarray(self.translation, dtype=float).reshape(3))
        if not self.is_proper():
            raise GeometryError("rotation must be orthonormal with determinant +1")

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_translation(cls, v) -> "RigidMotion":
        return cls(np.eye(3), np.asarray(v, dtype=float))

    @classmethod
    def about_axis(cls, axis, angle: float, point=None) -> "RigidMotion":
        """Rotation by ``angle`` (right-hand rule) about the line through ``point``."""
        rot = Rotation.from_rotvec(unit(np.asarray(axis, dtype=float)) * angle).as_matrix()
        q = np.zeros(3) if point is None else np.asarray(point, dtype=float)
        return cls(rot, q - rot @ q)

    @classmethod
    def rotation_x(cls, angle: float) -> "RigidMotion":
        c, s = np.cos(angle), np.sin(angle)
        return cls(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]), np.zeros(3))

    def apply(self, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float) @ self.rotation.T + self.translation

    def compose(self, other: "RigidMotion") -> "RigidMotion":
        """``self ∘ other``: apply ``other`` first."""
        return RigidMotion(self.rotation @ other.rotation,
                           self.rotation @ other.translation + self.translation)

    def inverse(self) -> "RigidMotion":
        rt = self.rotation.T
        return RigidMotion(rt, -rt @ self.translation)

    def is_proper(self, tol: float = 1e-9) -> bool:
        r = self.rotation
        return bool(np.allclose(r.T @ r, np.eye(3), atol=tol) and abs(np.linalg.det(r) - 1.0) <= tol)


def apply_motion(m: RigidMotion, p) -> Vec3:
    return m.apply(p)


@dataclass(frozen=True, eq=False)
class Twist:
    """Infinitesimal rigid motion; velocity at ``p`` is ``vel + omega x (p - ref_point)``."""

    omega: np.ndarray
    vel: np.ndarray
    ref_point: np.ndarray

    def __post_init__(self):
        for name in ("omega", "vel", "ref_point"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float).reshape(3))

    @classmethod
    def translation(cls, v, ref_point=None) -> "Twist":
        return cls(np.zeros(3), v, np.zeros(3) if ref_point is None else ref_point)

    @classmethod
    def rotation(cls, axis, point) -> "Twist":
        return cls(axis, np.zeros(3), point)

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.omega, self.vel])

    def velocity_at(self, p) -> np.ndarray:
        return self.vel + np.cross(self.omega, np.asarray(p, dtype=float) - self.ref_point)

    def normalized(self) -> "Twist":
        scale = np.abs(self.as_vector()).max()
        if scale == 0.0:
            raise GeometryError("zero twist")
        return Twist(self.omega / scale, self.vel / scale, self.ref_point)

    def motion(self, t: float) -> RigidMotion:
        """Finite motion after time ``t``: rotate about the axis through ``ref_point``, then translate."""
        theta = np.linalg.norm(self.omega) * t
        if theta == 0.0:
            rot = RigidMotion.identity()
        else:
            rot = RigidMotion.about_axis(self.omega, theta, self.ref_point)
        return RigidMotion.from_translation(self.vel * t).compose(rot)


# ----------------------------------------------------------------------------
# Facets
# ----------------------------------------------------------------------------


def newell_normal(vertices: np.ndarray) -> np.ndarray:
    """Area vector (twice the signed area times the unit normal) of a closed polygon."""
    v = np.asarray(vertices, dtype=float)
    return np.cross(v, np.roll(v, -1, axis=0)).sum(axis=0)


@dataclass(frozen=True, eq=False)
class ConvexFacet:
    """Planar strictly convex polygon; the winding fixes the outer side via the right-hand rule."""

    vertices: np.ndarray
    tag: str = "body"

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 3:
            raise GeometryError(f"facet needs >= 3 vertices in R^3, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise GeometryError("facet vertices must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @cached_property
    def area_vector(self) -> np.ndarray:
        return 0.5 * newell_normal(self.vertices)

    @property
    def area(self) -> float:
        return float(np.linalg.norm(self.area_vector))

    @cached_property
    def normal(self) -> np.ndarray:
        a = self.area_vector
        n = np.linalg.norm(a)
        if n == 0.0:
            raise DegenerateFacet("facet has zero area")
        return a / n

    @cached_property
    def offset(self) -> float:
        return float(self.normal @ self.vertices.mean(axis=0))

    @cached_property
    def centroid(self) -> np.ndarray:
        return polygon_area_centroid(self)[1]

    def signed_distance(self, p) -> np.ndarray:
        return np.asarray(p, dtype=float) @ self.normal - self.offset

    def basis(self):
        """Orthonormal in-plane axes ``(u, v)`` with ``u x v = normal``."""
        n = self.normal
        e = self.vertices[1] - self.vertices[0]
        u = unit(e - (e @ n) * n)
        return u, np.cross(n, u)

    def to_2d(self, points) -> np.ndarray:
        u, v = self.basis()
        d = np.asarray(points, dtype=float) - self.vertices[0]
        return np.stack([d @ u, d @ v], axis=-1)

    def from_2d(self, pts2) -> np.ndarray:
        u, v = self.basis()
        pts2 = np.asarray(pts2, dtype=float)
        return self.vertices[0] + pts2[..., :1] * u + pts2[..., 1:2] * v

    def transformed(self, m: RigidMotion) -> "ConvexFacet":
        return ConvexFacet(m.apply(self.vertices), self.tag)

    def translated(self, v) -> "ConvexFacet":
        return ConvexFacet(self.vertices + np.asarray(v, dtype=float), self.tag)

    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def min_edge(self) -> float:
        return float(np.linalg.norm(self.edges(), axis=1).min())

    def triangles(self) -> np.ndarray:
        """Fan triangulation from vertex 0, shape ``(k-2, 3, 3)``."""
        v = self.vertices
        k = len(v)
        return np.stack([np.stack([v[0], v[i], v[i + 1]]) for i in range(1, k - 1)])

    def check(self, tol: float = TOL, planarity: float = 1e-9) -> "ConvexFacet":
        """Raise unless the facet is non-degenerate, planar and strictly convex."""
        if self.area < tol * tol:
            raise DegenerateFacet(f"facet area {self.area:.3e} below {tol * tol:.1e}")
        dev = np.abs(self.signed_distance(self.vertices)).max()
        if dev > planarity:
            raise GeometryError(f"facet not planar (deviation {dev:.3e})")
        e = self.edges()
        turn = np.cross(e, np.roll(e, -1, axis=0)) @ self.normal
        if np.any(turn <= tol * tol):
            raise GeometryError("facet is not strictly convex")
        return self


# ----------------------------------------------------------------------------
# Area, centroid and coplanar clipping
# ----------------------------------------------------------------------------


def polygon_area_centroid(f: ConvexFacet):
    """Shoelace area in the facet plane and the area centroid."""
    v = f.vertices
    n = f.normal
    a = v[0]
    b, c = v[1:-1], v[2:]
    tri = 0.5 * (np.cross(b - a, c - a) @ n)
    area = tri.sum()
    if abs(area) < TOL * TOL:
        raise DegenerateFacet("polygon has near-zero area")
    centroid = ((a + b + c) / 3.0 * tri[:, None]).sum(axis=0) / area
    return float(area), centroid


def _clip_halfplane(poly: list, a: np.ndarray, b: np.ndarray, tol: float) -> list:
    """Keep the part of a 2-D polygon left of the directed line ``a -> b``."""
    if not poly:
        return poly
    d = b - a
    length = np.hypot(*d)

    def side(p):
        return (d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])) / length

    out = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        sc, sp = side(cur), side(prev)
        if sc >= -tol:
            if sp < -tol:
                out.append(prev + (cur - prev) * (sp / (sp - sc)))
            out.append(cur)
        elif sp >= -tol:
            out.append(prev + (cur - prev) * (sp / (sp - sc)))
    return out


def _tidy_polygon(pts: Sequence[np.ndarray], tol: float) -> list:
    """Drop repeated and collinear vertices of a convex 2-D polygon."""
    pts = list(pts)
    out = []
    for p in pts:
        if not out or np.hypot(*(p - out[-1])) > tol:
            out.append(p)
    while len(out) > 1 and np.hypot(*(out[0] - out[-1])) <= tol:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            p0, p1, p2 = out[i - 1], out[i], out[(i + 1) % len(out)]
            e1, e2 = p1 - p0, p2 - p1
            cross = e1[0] * e2[1] - e1[1] * e2[0]
            if abs(cross) <= tol * max(np.hypot(*e1), np.hypot(*e2), tol):
                out.pop(i)
                changed = True
                break
    return out


def clip_convex_2d(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> list:
    """Intersection of two counter-clockwise convex 2-D polygons."""
    poly = [np.asarray(p, dtype=float) for p in a]
    for i in range(len(b)):
        poly = _clip_halfplane(poly, b[i], b[(i + 1) % len(b)], tol * 1e-3)
        if not poly:
            return []
    return _tidy_polygon(poly, tol)


def coplanar(a: ConvexFacet, b: ConvexFacet, tol: float = TOL) -> bool:
    return bool(np.abs(a.signed_distance(b.vertices)).max() <= tol
                and np.abs(b.signed_distance(a.vertices)).max() <= tol)


def _ccw_2d(pts2: np.ndarray) -> np.ndarray:
    x, y = pts2[:, 0], pts2[:, 1]
    area2 = (x * np.roll(y, -1) - np.roll(x, -1) * y).sum()
    return pts2 if area2 > 0 else pts2[::-1]


def clip_coplanar(a: ConvexFacet, b: ConvexFacet, tol: float = TOL) -> Optional[ConvexFacet]:
    """Convex intersection of two coplanar facets, in ``a``'s plane and winding."""
    if not coplanar(a, b, tol):
        raise NotCoplanar("facet planes differ by more than the tolerance")
    return _clip_in_plane(a, b.vertices, tol)


def _clip_in_plane(a: ConvexFacet, other_vertices: np.ndarray, tol: float) -> Optional[ConvexFacet]:
    # a's own projection is counter-clockwise because u x v = a.normal
    pa = a.to_2d(a.vertices)
    pb = _ccw_2d(a.to_2d(other_vertices))
    poly = clip_convex_2d(pa, pb, tol)
    if len(poly) < 3:
        return None
    out = ConvexFacet(a.from_2d(np.array(poly)), a.tag)
    if out.area <= tol * tol:
        return None
    return out


def project_and_clip(static: ConvexFacet, moving: ConvexFacet, tol: float = TOL) -> Optional[ConvexFacet]:
    """Overlap of ``moving`` orthogonally projected onto ``static``'s plane, clipped to ``static``."""
    d = static.signed_distance(moving.vertices)
    projected = moving.vertices - d[:, None] * static.normal
    return _clip_in_plane(static, projected, tol)


# ----------------------------------------------------------------------------
# Separating-axis penetration (batched)
# ----------------------------------------------------------------------------

_PAIR_CACHE: dict = {}


def _pairs(m: int):
    if m not in _PAIR_CACHE:
        _PAIR_CACHE[m] = np.triu_indices(m, 1)
    return _PAIR_CACHE[m]


def sat_penetration(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Penetration depth of the convex hulls of point sets ``x`` (P,m,3) and ``y`` (P,n,3).

    Candidate axes are all cross products of point-difference vectors within and
    across the two sets, which contain every face normal and every edge-edge axis
    of both hulls.  Positive values are the minimum overlap over those axes (the
    penetration depth); negative values bound the separation from below.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = x.shape[0]
    if p == 0:
        return np.zeros(0)
    ix, jx = _pairs(x.shape[1])
    iy, jy = _pairs(y.shape[1])
    dx = x[:, jx] - x[:, ix]
    dy = y[:, jy] - y[:, iy]
    axes = [np.cross(dx[:, :, None, :], dy[:, None, :, :]).reshape(p, -1, 3)]
    for d in (dx, dy):
        i, j = _pairs(d.shape[1])
        if len(i):
            axes.append(np.cross(d[:, i], d[:, j]))
    ax = np.concatenate(axes, axis=1)
    norm = np.linalg.norm(ax, axis=2)
    valid = norm > 1e-14
    ax = ax / np.where(valid, norm, 1.0)[..., None]
    px = np.einsum("pak,pmk->pam", ax, x)
    py = np.einsum("pak,pmk->pam", ax, y)
    overlap = np.minimum(px.max(axis=2) - py.min(axis=2), py.max(axis=2) - px.min(axis=2))
    overlap = np.where(valid, overlap, np.inf)
    return overlap.min(axis=1)


def triangulate(facets: Iterable[ConvexFacet]) -> np.ndarray:
    tris = [f.triangles() for f in facets]
    if not tris:
        return np.zeros((0, 3, 3))
    return np.concatenate(tris, axis=0)


# ----------------------------------------------------------------------------
# Exact distances
# ----------------------------------------------------------------------------


def _segment_distance(p1, q1, p2, q2) -> float:
    d1, d2, r = q1 - p1, q2 - p2, p1 - p2
    a, e, f = d1 @ d1, d2 @ d2, d2 @ r
    if a <= 1e-30 and e <= 1e-30:
        return float(np.linalg.norm(r))
    if a <= 1e-30:
        s, t = 0.0, np.clip(f / e, 0.0, 1.0)
    else:
        c = d1 @ r
        if e <= 1e-30:
            t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
        else:
            b = d1 @ d2
            denom = a * e - b * b
            s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > 1e-30 else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
            elif t > 1.0:
                t, s = 1.0, np.clip((b - c) / a, 0.0, 1.0)
    return float(np.linalg.norm((p1 + d1 * s) - (p2 + d2 * t)))


def _inside_2d(poly2: np.ndarray, q: np.ndarray) -> bool:
    poly2 = _ccw_2d(poly2)
    e = np.roll(poly2, -1, axis=0) - poly2
    w = q - poly2
    return bool(np.all(e[:, 0] * w[:, 1] - e[:, 1] * w[:, 0] >= 0.0))


def point_facet_distance(f: ConvexFacet, p) -> float:
    p = np.asarray(p, dtype=float)
    d = float(f.signed_distance(p))
    if _inside_2d(f.to_2d(f.vertices), f.to_2d(p)):
        return abs(d)
    v = f.vertices
    w = np.roll(v, -1, axis=0)
    return min(_segment_distance(p, p, v[i], w[i]) for i in range(len(v)))


def facet_distance(a: ConvexFacet, b: ConvexFacet) -> float:
    """Exact Euclidean distance between two non-crossing convex facets."""
    best = min(min(point_facet_distance(b, p) for p in a.vertices),
               min(point_facet_distance(a, p) for p in b.vertices))
    va, wa = a.vertices, np.roll(a.vertices, -1, axis=0)
    vb, wb = b.vertices, np.roll(b.vertices, -1, axis=0)
    for i in range(len(va)):
        for j in range(len(vb)):
            best = min(best, _segment_distance(va[i], wa[i], vb[j], wb[j]))
    return best


# ----------------------------------------------------------------------------
# Classification
# ----------------------------------------------------------------------------


class FacetRelation(enum.Enum):
    DISJOINT = "Disjoint"
    TOUCHING = "Touching"
    CROSSING = "Crossing"
    COPLANAR_OVERLAP = "CoplanarOverlap"


def _require_area(f: ConvexFacet, tol: float):
    if f.area < tol * tol:
        raise DegenerateFacet(f"facet '{f.tag}' has near-zero area {f.area:.3e}")


def facet_facet_classify(a: ConvexFacet, b: ConvexFacet, tol: float = TOL) -> FacetRelation:
    _require_area(a, tol)
    _require_area(b, tol)
    if coplanar(a, b, tol):
        overlap = _clip_in_plane(a, b.vertices, tol)
        if overlap is not None:
            return FacetRelation.COPLANAR_OVERLAP
    else:
        pen = sat_penetration(a.vertices[None], b.vertices[None])[0]
        if pen > tol:
            return FacetRelation.CROSSING
    if facet_distance(a, b) <= tol:
        return FacetRelation.TOUCHING
    return FacetRelation.DISJOINT


# ----------------------------------------------------------------------------
# Swept collision
# ----------------------------------------------------------------------------


MotionPath = Callable[[float], RigidMotion]

_OVERSHOOT = 1e-2


def _aabb_mask(lo, hi, olo, ohi, tol):
    return np.all((lo <= ohi + tol) & (olo <= hi + tol), axis=-1)


def swept_first_hit(moving: Sequence[ConvexFacet], motion_path: MotionPath,
                    obstacles: Sequence[ConvexFacet], steps: int, tol: float = TOL,
                    refine: int = 0) -> Optional[float]:
    """Smallest sampled ``t`` in ``(0, 1]`` at which a moving facet hits an obstacle.

    Each step tests the convex hull of every moving triangle at the two step
    endpoints (its chord-swept prism) against the obstacles.  The hull contains
    the triangle at the step end, so an endpoint crossing is always caught and a
    thin obstacle cannot be stepped over.  The far end of each prism is pushed
    ``_OVERSHOOT`` of a step forward so that an obstacle lying exactly on a step
    boundary is still penetrated.  ``refine`` bisects the hit step that many times.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not moving or not obstacles:
        return None
    mtri = triangulate(moving)
    otri = triangulate(obstacles)
    ts = np.linspace(0.0, 1.0, steps + 1)
    start = motion_path(0.0)
    if not (np.allclose(start.rotation, np.eye(3), atol=1e-12) and np.allclose(start.translation, 0.0, atol=1e-12)):
        raise ValueError("motion_path(0) must be the identity")
    poses = np.stack([motion_path(float(t)).apply(mtri) for t in ts])
    ahead = np.stack([motion_path(float(t + _OVERSHOOT / steps)).apply(mtri) for t in ts[1:]])

    feature = min(min(f.min_edge() for f in moving), min(f.min_edge() for f in obstacles))
    disp = np.linalg.norm(poses[1:] - poses[:-1], axis=-1).max()
    if disp > 0.5 * feature:
        raise StepTooCoarse(f"per-step displacement {disp:.4g} exceeds half the minimum feature size {feature:.4g}")

    olo, ohi = otri.min(axis=1), otri.max(axis=1)
    lo, hi = poses.min(axis=(0, 2)), poses.max(axis=(0, 2))
    ni, ki = np.nonzero(_aabb_mask(lo[:, None], hi[:, None], olo[None], ohi[None], tol))
    if len(ni) == 0:
        return None
    obs = otri[ki]
    olo, ohi = olo[ki], ohi[ki]

    def hits(pa: np.ndarray, pb: np.ndarray) -> bool:
        prism = np.concatenate([pa[ni], pb[ni]], axis=1)
        mask = _aabb_mask(prism.min(axis=1), prism.max(axis=1), olo, ohi, tol)
        if not mask.any():
            return False
        return bool((sat_penetration(prism[mask], obs[mask]) > tol).any())

    for i in range(1, steps + 1):
        if hits(poses[i - 1], ahead[i - 1]):
            a, b = float(ts[i - 1]), float(ts[i])
            pa = poses[i - 1]
            for _ in range(refine):
                mid = 0.5 * (a + b)
                pm = motion_path(mid + _OVERSHOOT * (mid - a)).apply(mtri)
                if hits(pa, pm):
                    b = mid
                else:
                    a, pa = mid, motion_path(mid).apply(mtri)
            return b
    return None
