import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from decalock.errors import DegenerateFacet, GeometryError, NotCoplanar, StepTooCoarse
from decalock.geom import (TOL, ConvexFacet, FacetRelation, RigidMotion, Twist, apply_motion,
                           clip_coplanar, facet_facet_classify, polygon_area_centroid,
                           swept_first_hit)

from oracles import coplanar_oracle, grid_oracle, regular_polygon_area

R = FacetRelation


def square(x0=0.0, x1=1.0, y0=0.0, y1=1.0, z=0.0):
    return ConvexFacet(np.array([[x0, y0, z], [x1, y0, z], [x1, y1, z], [x0, y1, z]]))


def tri(*pts):
    return ConvexFacet(np.array(pts, dtype=float))


def pentagon(r=2.0, z=0.0):
    a = 2 * np.pi * np.arange(5) / 5
    return ConvexFacet(np.column_stack([r * np.cos(a), r * np.sin(a), np.full(5, z)]))


# -------------------------------------------------------------------- motions


def test_apply_motion_examples():
    assert np.allclose(apply_motion(RigidMotion.identity(), (2, 0, 0)), (2, 0, 0))
    assert np.allclose(apply_motion(RigidMotion.rotation_x(np.pi / 2), (0, 1, 0)), (0, 0, 1), atol=1e-15)
    assert np.allclose(apply_motion(RigidMotion.rotation_x(2 * np.pi / 9), (3, 0, 0)), (3, 0, 0), atol=0)


def test_motion_composition_and_inverse():
    rng = np.random.default_rng(3)
    ms = [RigidMotion(Rotation.random(random_state=i).as_matrix(), rng.normal(size=3)) for i in range(3)]
    a, b, c = ms
    p = rng.normal(size=(10, 3))
    assert np.allclose(a.compose(b).compose(c).apply(p), a.compose(b.compose(c)).apply(p))
    assert np.allclose(a.inverse().apply(a.apply(p)), p)
    assert all(m.is_proper() for m in ms)


def test_non_orthonormal_rotation_rejected():
    with pytest.raises(GeometryError):
        RigidMotion(np.diag([1.0, 1.0, -1.0]), np.zeros(3))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_apply_motion_preserves_distances(seed):
    rng = np.random.default_rng(seed)
    m = RigidMotion(Rotation.random(random_state=seed).as_matrix(), rng.uniform(-10, 10, 3))
    p, q = rng.uniform(-5, 5, (1000, 3)), rng.uniform(-5, 5, (1000, 3))
    d0 = np.linalg.norm(p - q, axis=1)
    d1 = np.linalg.norm(m.apply(p) - m.apply(q), axis=1)
    assert np.max(np.abs(d0 - d1)) < 1e-9


def test_twist_velocity_definition():
    tw = Twist(np.array([0, 0, 1.0]), np.array([1.0, 0, 0]), np.array([1.0, 0, 0]))
    assert np.allclose(tw.velocity_at([2, 0, 0]), [1, 1, 0])
    # first-order agreement of the finite motion with the twist
    h = 1e-6
    p = np.array([0.3, -0.2, 0.5])
    fd = (tw.motion(h).apply(p) - p) / h
    assert np.allclose(fd, tw.velocity_at(p), atol=1e-5)


# ----------------------------------------------------------------- polygons


def test_polygon_area_centroid_examples():
    area, c = polygon_area_centroid(square())
    assert area == pytest.approx(1.0) and np.allclose(c, (0.5, 0.5, 0))
    area, _ = polygon_area_centroid(pentagon(2.0))
    assert area == pytest.approx(regular_polygon_area(5, 2.0), abs=1e-12)
    assert area == pytest.approx(9.5106, abs=1e-4)
    area, c = polygon_area_centroid(tri((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    assert area == pytest.approx(0.5) and np.allclose(c, (1 / 3, 1 / 3, 0))


def test_facet_validation():
    with pytest.raises(GeometryError, match="convex"):
        ConvexFacet(np.array([[0, 0, 0], [2, 0, 0], [1, 0.2, 0], [1, 2, 0]], dtype=float)).check()
    with pytest.raises(DegenerateFacet):
        tri((0, 0, 0), (1, 0, 0), (2, 0, 0)).check()
    with pytest.raises(GeometryError, match="planar"):
        ConvexFacet(np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0.1], [0, 1, 0]], dtype=float)).check()


def test_clip_coplanar_examples():
    out = clip_coplanar(square(), square(0.5, 1.5))
    assert out is not None
    lo, hi = out.vertices.min(axis=0), out.vertices.max(axis=0)
    assert np.allclose(lo, (0.5, 0, 0)) and np.allclose(hi, (1, 1, 0))
    assert out.area == pytest.approx(0.5)
    assert clip_coplanar(square(), square(2, 3)) is None
    p = pentagon()
    assert clip_coplanar(p, p).area == pytest.approx(p.area, abs=1e-9)
    with pytest.raises(NotCoplanar):
        clip_coplanar(square(), square(z=0.1))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=12, max_size=12))
def test_clip_area_bound(c):
    a = tri((c[0], c[1], 0), (c[2], c[3], 0), (c[4], c[5], 0))
    b = tri((c[6], c[7], 0), (c[8], c[9], 0), (c[10], c[11], 0))
    if a.area < 1e-3 or b.area < 1e-3:
        return
    out = clip_coplanar(a, b)
    if out is not None:
        assert out.area <= min(a.area, b.area) + 1e-9


# ----------------------------------------------------------- classification


def test_classify_examples():
    t = tri((0, 0, 0), (1, 0, 0), (0, 1, 0))
    assert facet_facet_classify(t, t) is R.COPLANAR_OVERLAP
    assert facet_facet_classify(t, t.translated((100, 0, 0))) is R.DISJOINT
    a = tri((0, 0, 0), (2, 0, 0), (0, 2, 0))
    b = tri((0.5, 0.5, -1), (0.5, 0.5, 1), (1.5, 0.5, 1))
    assert facet_facet_classify(a, b) is R.CROSSING


def test_classify_touching():
    a = tri((0, 0, 0), (2, 0, 0), (0, 2, 0))
    # edge resting on the face, and a vertex touching it
    assert facet_facet_classify(a, tri((0.5, 0.5, 0), (1, 0.5, 0), (0.7, 0.5, 1))) is R.TOUCHING
    assert facet_facet_classify(a, tri((0.5, 0.5, 0), (1, 1, 1), (0, 1, 1))) is R.TOUCHING
    # coplanar squares sharing only an edge
    assert facet_facet_classify(square(), square(1, 2)) is R.TOUCHING


def test_classify_degenerate():
    with pytest.raises(DegenerateFacet):
        facet_facet_classify(tri((0, 0, 0), (1, 0, 0), (0, 1e-15, 0)), square())


def _random_pair(rng, coplanar):
    if coplanar:
        a2, b2 = rng.uniform(-1, 1, (3, 2)), rng.uniform(-1, 1, (3, 2)) + rng.uniform(-1, 1, 2)
        rot = Rotation.random(random_state=int(rng.integers(2**31))).as_matrix()
        off = rng.uniform(-1, 1, 3)
        lift = lambda p: np.column_stack([p, np.zeros(3)]) @ rot.T + off
        return a2, b2, lift(a2), lift(b2)
    a = rng.uniform(-1, 1, (3, 3))
    b = rng.uniform(-1, 1, (3, 3)) + rng.uniform(-0.6, 0.6, 3)
    return None, None, a, b


def _area3(p):
    return np.linalg.norm(np.cross(p[1] - p[0], p[2] - p[0])) / 2


def oracle_agreement(n_pairs=1000, seed=2024):
    """Compare ``facet_facet_classify`` against the grid oracle; returns (compared, mismatches)."""
    rng = np.random.default_rng(seed)
    compared, mismatches = 0, []
    expected_of = {"crossing": R.CROSSING, "disjoint": R.DISJOINT, "overlap": R.COPLANAR_OVERLAP}
    while compared + len(mismatches) < n_pairs:
        coplanar = rng.random() < 0.15
        a2, b2, a, b = _random_pair(rng, coplanar)
        if _area3(a) < 0.05 or _area3(b) < 0.05:
            continue
        label, margin = coplanar_oracle(a2, b2) if coplanar else grid_oracle(a, b)
        if margin <= 10 * TOL:
            continue
        got = facet_facet_classify(ConvexFacet(a), ConvexFacet(b))
        if got is expected_of[label]:
            compared += 1
        else:
            mismatches.append((a, b, label, margin, got))
    return compared, mismatches


def test_classify_matches_grid_oracle():
    compared, mismatches = oracle_agreement()
    assert not mismatches, mismatches[:3]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=18, max_size=18))
def test_classify_symmetric(c):
    a, b = np.array(c[:9]).reshape(3, 3), np.array(c[9:]).reshape(3, 3)
    if _area3(a) < 1e-3 or _area3(b) < 1e-3:
        return
    fa, fb = ConvexFacet(a), ConvexFacet(b)
    assert facet_facet_classify(fa, fb) is facet_facet_classify(fb, fa)


# ------------------------------------------------------------------- sweeps


def _translate(v):
    v = np.asarray(v, dtype=float)
    return lambda t: RigidMotion.from_translation(t * v)


def test_swept_first_hit_examples():
    d = 0.02
    moving = [square(z=d)]
    assert swept_first_hit(moving, _translate((0, 0, -2 * d)), [], steps=10) is None
    t = swept_first_hit(moving, _translate((0, 0, -2 * d)), [square()], steps=10)
    assert t is not None and abs(t - 0.5) <= 0.1
    t = swept_first_hit(moving, _translate((0, 0, -2 * d)), [square()], steps=10, refine=10)
    assert abs(t - 0.5) <= 0.1 / 2**9
    assert swept_first_hit(moving, _translate((0.3, 0.2, 0)), [square(z=0)], steps=10) is None


def test_swept_first_hit_no_tunnelling():
    # parallel plates: both sampled poses miss the plate, only the swept prism hits it
    plate = square(-1, 2, -1, 2)
    moving = [tri((0, 0, 0.1), (1, 0, 0.1), (0, 1, 0.1))]
    path = _translate((0, 0, -1.0))
    assert facet_facet_classify(moving[0].transformed(path(0.2)), plate) is R.DISJOINT
    assert swept_first_hit(moving, path, [plate], steps=5) == pytest.approx(0.2)


def test_swept_first_hit_step_too_coarse():
    moving = [tri((0, 0, 0), (0.1, 0, 0), (0, 0.1, 0))]
    with pytest.raises(StepTooCoarse):
        swept_first_hit(moving, _translate((5.0, 0, 0)), [square(3, 4)], steps=4)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_swept_monotone_in_obstacles(seed):
    rng = np.random.default_rng(seed)
    moving = [tri((0, 0, 0), (0.5, 0, 0), (0, 0.5, 0))]
    path = _translate(rng.uniform(-1, 1, 3))
    obstacles = []
    for _ in range(6):
        p = rng.uniform(-1.5, 1.5, (3, 3))
        if _area3(p) > 0.05:
            obstacles.append(ConvexFacet(p))
    best = None
    for k in range(len(obstacles) + 1):
        t = swept_first_hit(moving, path, obstacles[:k], steps=40)
        if best is not None:
            assert t is not None and t <= best
        best = t if t is not None else best
