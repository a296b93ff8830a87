"""Core geometry: cross products, hulls, supports, chords, slices, grids."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from pettylab import (FlatBodyError, InputError, chord, convex_hull, det_d,
                      facet_data, fibonacci_sphere, slice_area, support,
                      wedge_last)
from pettylab.geom import adaptive_simpson, slice_quadratics, support_batch

E1, E2, E3 = np.eye(3)


class TestWedgeAndDet:
    def test_wedge_orthonormal_frame(self):
        assert np.allclose(wedge_last([E1, E2]), E3)

    def test_wedge_repeated_argument(self):
        assert np.allclose(wedge_last([E1, E1]), 0.0)

    def test_wedge_hand_cofactor(self):
        # cofactor expansion of ((1,0,0),(1,1,0)) gives (0,0,1)
        assert np.allclose(wedge_last([[1, 0, 0], [1, 1, 0]]), [0, 0, 1])

    def test_wedge_dimension_mismatch(self):
        with pytest.raises(InputError):
            wedge_last([[1, 0, 0]])
        with pytest.raises(InputError):
            wedge_last([[1, 0], [0, 1]])

    def test_det_identity(self):
        assert det_d(np.eye(3)) == 1.0

    def test_det_dependent(self):
        assert det_d([E1, E2, E1 + E2]) == 0.0

    def test_det_hand_cofactor(self):
        assert det_d([[1, 1, 1], [1, 1, -1], [1, -1, 1]]) == -4.0

    def test_det_dimension_mismatch(self):
        with pytest.raises(InputError):
            det_d([[1, 0, 0], [0, 1, 0]])

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_lagrange_identity(self, seed):
        # <wedge(a, b), y> = det(a, b, y), relative 1e-12
        rng = np.random.default_rng(seed)
        a, b, y = rng.standard_normal((3, 3))
        lhs = float(np.dot(wedge_last([a, b]), y))
        rhs = det_d([a, b, y])
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_wedge_d4(self):
        # <w, y> = det(v1, v2, v3, y) in dimension 4
        rng = np.random.default_rng(5)
        vs = rng.standard_normal((3, 4))
        w = wedge_last(vs)
        for _ in range(5):
            y = rng.standard_normal(4)
            lhs = float(np.dot(w, y))
            rhs = float(np.linalg.det(np.column_stack([*vs, y])))
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


class TestConvexHull:
    def test_cube(self, cube):
        assert len(cube.facets) == 12
        assert cube.volume == pytest.approx(8.0, abs=1e-12)

    def test_octahedron_volume(self, octahedron):
        # cross-polytope volume 2^d / d!
        assert octahedron.volume == pytest.approx(4.0 / 3.0, rel=1e-12)

    def test_coplanar_rejected(self):
        pts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
        with pytest.raises(FlatBodyError):
            convex_hull(pts)

    def test_too_few_points(self):
        with pytest.raises(InputError):
            convex_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0]])

    def test_hull_idempotent(self, rng):
        pts = rng.standard_normal((30, 3))
        P = convex_hull(pts)
        Q = convex_hull(P.vertices)
        assert Q.volume == pytest.approx(P.volume, rel=1e-12)

    def test_interior_points_dropped(self, rng):
        pts = np.vstack([rng.standard_normal((20, 3)), [[0.0, 0.0, 0.0]]])
        P = convex_hull(pts * 3.0)
        d = P.facet_offsets - P.facet_normals @ np.zeros(3)
        assert np.all(d > 0)  # origin strictly inside, not a vertex

    def test_volume_matches_qhull(self, rng):
        for _ in range(20):
            pts = rng.standard_normal((15, 3))
            P = convex_hull(pts)
            assert P.volume == pytest.approx(ConvexHull(pts).volume, rel=1e-12)


class TestFacetData:
    def test_cube_facets(self, cube):
        normals, areas, tris = facet_data(cube)
        assert np.allclose(areas, 2.0)
        axis_weight = np.abs(normals).sum(axis=1)
        assert np.allclose(axis_weight, 1.0)  # all +-e_i

    def test_octahedron_facets(self, octahedron):
        normals, areas, _ = facet_data(octahedron)
        assert np.allclose(areas, math.sqrt(3.0) / 2.0)
        assert np.allclose(np.abs(normals), 1.0 / math.sqrt(3.0))

    def test_tetrahedron_areas(self, tetrahedron):
        _, areas, _ = facet_data(tetrahedron)
        assert sorted(np.round(areas, 12)) == pytest.approx(
            [0.5, 0.5, 0.5, math.sqrt(3.0) / 2.0], abs=1e-12)

    def test_closedness_random(self, rng):
        # sum of area-weighted normals vanishes on 100 random hulls
        for _ in range(100):
            P = convex_hull(rng.standard_normal((12, 3)))
            normals, areas, _ = facet_data(P)
            resid = np.linalg.norm((normals * areas[:, None]).sum(axis=0))
            assert resid <= 1e-9 * areas.sum()


class TestSupport:
    def test_cube_axis(self, cube):
        assert support(cube, E1) == 1.0

    def test_octahedron_diagonal(self, octahedron):
        u = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
        assert support(octahedron, u) == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-14)

    def test_homogeneity(self, cube):
        assert support(cube, [1, 1, 1]) == 3.0

    def test_batch_matches_scalar(self, rng, octahedron):
        X = rng.standard_normal((40, 3))
        vals = support_batch(octahedron, X)
        for x, v in zip(X, vals):
            assert support(octahedron, x) == pytest.approx(v, rel=1e-14)


class TestChord:
    def test_cube_axis(self, cube):
        assert chord(cube, [0, 0, 0], E3) == (-1.0, 1.0)

    def test_octahedron_offset(self, octahedron):
        f, g = chord(octahedron, [0.5, 0, 0], E3)
        assert (f, g) == pytest.approx((-0.5, 0.5), abs=1e-12)

    def test_miss(self, cube):
        assert chord(cube, [2, 0, 0], E3) is None

    def test_endpoints_on_boundary(self, rng):
        # both returned points must satisfy every facet plane to 1e-9
        for _ in range(25):
            P = convex_hull(rng.standard_normal((14, 3)))
            base = P.vertices.mean(axis=0)
            d = rng.standard_normal(3)
            d /= np.linalg.norm(d)
            f, g = chord(P, base, d)
            scale = np.max(np.abs(P.vertices))
            for t in (f, g):
                p = base + t * d
                gaps = P.facet_offsets - P.facet_normals @ p
                assert gaps.min() >= -1e-9 * scale
                assert gaps.min() <= 1e-7 * scale  # actually touches the boundary


class TestSliceArea:
    def test_cube_equator(self, cube):
        assert slice_area(cube, E3, 0.0) == pytest.approx(4.0, rel=1e-12)

    def test_octahedron_half(self, octahedron):
        # square of area 2(1-|s|)^2 at s = 1/2
        assert slice_area(octahedron, E3, 0.5) == pytest.approx(0.5, rel=1e-12)

    def test_outside_is_zero(self, cube):
        assert slice_area(cube, E3, 2.0) == 0.0
        assert slice_area(cube, E3, 1.0) == 0.0  # |s| >= h on symmetric bodies

    def test_through_vertices(self, octahedron):
        # plane through four vertices still yields the full square
        assert slice_area(octahedron, E3, 0.0) == pytest.approx(2.0, rel=1e-12)

    def test_integrates_to_volume(self, rng):
        # piecewise-quadratic slice areas integrate exactly to the volume
        for _ in range(20):
            P = convex_hull(rng.standard_normal((12, 3)))
            u = rng.standard_normal(3)
            u /= np.linalg.norm(u)
            breaks, coeffs = slice_quadratics(P, u)
            vol = 0.0
            for k in range(len(breaks) - 1):
                a, b = breaks[k], breaks[k + 1]
                c0, c1, c2 = coeffs[k]
                vol += (c0 * (b - a) + c1 * (b * b - a * a) / 2.0
                        + c2 * (b ** 3 - a ** 3) / 3.0)
            assert vol == pytest.approx(P.volume, rel=1e-9)


class TestFibonacciSphere:
    def test_two_points(self):
        g = fibonacci_sphere(2)
        assert len(g) == 2
        assert np.dot(g.points[0], g.points[1]) < 0.0  # roughly antipodal

    def test_equidistribution(self):
        g = fibonacci_sphere(2048).points
        # max nearest-neighbor angular gap below 0.1 rad, measured directly
        dots = np.clip(g @ g.T, -1.0, 1.0)
        np.fill_diagonal(dots, -1.0)
        gaps = np.arccos(np.max(dots, axis=1))
        assert gaps.max() < 0.1

    def test_unit_norms(self):
        g = fibonacci_sphere(999).points
        assert np.max(np.abs(np.linalg.norm(g, axis=1) - 1.0)) <= 1e-12

    def test_too_few(self):
        with pytest.raises(InputError):
            fibonacci_sphere(1)

    def test_deterministic(self):
        assert np.array_equal(fibonacci_sphere(128).points, fibonacci_sphere(128).points)


def test_adaptive_simpson_polynomial():
    val = adaptive_simpson(lambda s: s * s, 0.0, 2.0, tol=1e-12)
    assert val == pytest.approx(8.0 / 3.0, abs=1e-12)


def test_adaptive_simpson_sqrt():
    val = adaptive_simpson(math.sqrt, 0.0, 1.0, tol=1e-10)
    assert val == pytest.approx(2.0 / 3.0, abs=1e-8)
