"""Steiner/Schwartz symmetrization: exactness, monotonicity, rounding."""

import math

import numpy as np
import pytest

from pettylab import (FlatBodyError, InputError, SymmetryError, chord_profile,
                      convex_hull, ratio, schwartz,
                      schwartz_ratio_monotonicity, steiner,
                      steiner_projection_monotonicity)
from pettylab.revolution import rev_volume
from pettylab.symmetrize import roundness, steiner_rounding_run
from pettylab import fixtures

E1, E2, E3 = np.eye(3)


class TestChordProfile:
    def test_cube_profile(self, cube):
        prof = chord_profile(cube, E3)
        assert np.all(prof.g >= prof.f)
        assert np.all(prof.w >= 0.0)
        assert prof.w.max() == pytest.approx(1.0, abs=1e-12)

    def test_midpoint_recentring(self, cube):
        shifted = convex_hull(cube.vertices + np.array([0.0, 0.0, 3.0]))
        prof = chord_profile(shifted, E3)
        assert np.allclose(prof.u[prof.w > 1e-9], 3.0, atol=1e-9)


class TestSteiner:
    def test_cube_fixed_point(self, cube):
        S = steiner(cube, E3)
        assert S.volume == pytest.approx(8.0, rel=1e-12)
        assert sorted(np.round(S.vertices[:, 2], 9).tolist()).count(-1.0) == 4

    def test_shifted_cube_recentres(self, cube):
        shifted = convex_hull(cube.vertices + np.array([1.0, 1.0, 1.0]))
        S = steiner(shifted, E3)
        assert S.volume == pytest.approx(8.0, rel=1e-12)
        assert S.vertices[:, 2].min() == pytest.approx(-1.0, abs=1e-12)
        assert S.vertices[:, 2].max() == pytest.approx(1.0, abs=1e-12)
        # x/y extent untouched
        assert S.vertices[:, 0].max() == pytest.approx(2.0, abs=1e-12)

    def test_tetrahedron_volume_and_shape(self, tetrahedron):
        S = steiner(tetrahedron, E3)
        assert S.volume == pytest.approx(1.0 / 6.0, rel=1e-12)
        assert S.vertices[:, 2].max() == pytest.approx(0.5, abs=1e-12)

    def test_crossed_edges_need_crossing_samples(self):
        # top edge along x, bottom edge along y: every vertex chord is a point,
        # yet the body has volume; the edge-crossing sample carries all of it
        P = convex_hull([[1, 0, 1], [-1, 0, 1], [0, 1, -1], [0, -1, -1]])
        S = steiner(P, E3)
        assert S.volume == pytest.approx(P.volume, rel=1e-9)

    def test_volume_preserved_random(self, rng):
        for _ in range(100):
            P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
            nu = rng.standard_normal(3)
            nu /= np.linalg.norm(nu)
            S = steiner(P, nu)
            assert S.volume == pytest.approx(P.volume, rel=1e-9)

    def test_reflection_symmetry(self, rng):
        for _ in range(20):
            P = fixtures.random_symmetric_polytope(rng, 6)
            S = steiner(P, E3)
            refl = S.vertices * np.array([1.0, 1.0, -1.0])
            d = np.sqrt(((refl[:, None, :] - S.vertices[None, :, :]) ** 2).sum(-1))
            assert d.min(axis=1).max() <= 1e-9

    def test_idempotence(self, rng):
        P = fixtures.random_symmetric_polytope(rng, 8)
        S1 = steiner(P, E3)
        S2 = steiner(S1, E3)
        assert S2.volume == pytest.approx(S1.volume, rel=1e-9)
        d = np.sqrt(((S2.vertices[:, None, :] - S1.vertices[None, :, :]) ** 2).sum(-1))
        assert d.min(axis=1).max() <= 1e-7

    def test_flat_rejected(self):
        with pytest.raises((FlatBodyError, InputError)):
            convex_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]])


class TestSchwartz:
    def test_octahedron_becomes_double_cone(self, octahedron):
        R = schwartz(octahedron, E3)
        assert R.a == pytest.approx(1.0, abs=1e-12)
        mid = np.searchsorted(R.s, 0.0)
        expect = math.sqrt(2.0 / math.pi)
        # profile is the exact tent sqrt(2/pi) (1 - |s|)
        assert np.max(np.abs(R.f - expect * (1.0 - np.abs(R.s)))) <= 1e-9

    def test_cube_becomes_cylinder(self, cube):
        R = schwartz(cube, E3)
        assert np.allclose(R.f, 2.0 / math.sqrt(math.pi), atol=1e-12)
        assert rev_volume(R) == pytest.approx(8.0, rel=1e-9)

    def test_icosphere_profile_near_circle(self):
        # pole caps of the inscribed mesh deviate most; interior is tight and
        # the deviation shrinks under refinement
        devs, interior_devs = [], []
        for level in (2, 3):
            P = fixtures.icosphere(level)
            R = schwartz(P, E3)
            circ = np.sqrt(np.maximum(0.0, 1.0 - R.s ** 2))
            devs.append(np.max(np.abs(R.f - circ)))
            interior = np.abs(R.s) <= 0.9
            interior_devs.append(np.max(np.abs(R.f - circ)[interior]))
        assert devs[1] < devs[0] < 0.1
        assert interior_devs[1] < 0.01
        assert interior_devs[1] < 0.5 * interior_devs[0]

    def test_volume_within_tenth_percent(self, rng):
        for _ in range(25):
            P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
            nu = rng.standard_normal(3)
            nu /= np.linalg.norm(nu)
            R = schwartz(P, nu)
            assert rev_volume(R) == pytest.approx(P.volume, rel=1e-3)

    def test_profile_concave_and_even(self, rng):
        P = fixtures.random_symmetric_polytope(rng, 9)
        R = schwartz(P, E3)
        slopes = np.diff(R.f) / np.diff(R.s)
        assert np.all(np.diff(slopes) <= 1e-9)
        assert np.max(np.abs(R.f - R.f[::-1])) <= 1e-12

    def test_asymmetric_rejected(self, tetrahedron):
        with pytest.raises(SymmetryError):
            schwartz(tetrahedron, E3)


class TestSteinerShadowMonotonicity:
    def test_cube_fixed(self, cube):
        before, after = steiner_projection_monotonicity(cube, E3, E1)
        assert before == pytest.approx(64.0, rel=1e-12)
        assert after == pytest.approx(before, rel=1e-12)

    def test_tetrahedron(self, tetrahedron):
        before, after = steiner_projection_monotonicity(tetrahedron, E3, E1)
        assert after <= before + 1e-9 * before

    def test_random_triples(self, rng):
        for _ in range(60):
            P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
            nu = rng.standard_normal(3)
            nu /= np.linalg.norm(nu)
            h2 = rng.standard_normal(3)
            h2 /= np.linalg.norm(h2)
            if abs(np.dot(nu, h2)) > 1 - 1e-6:
                continue
            before, after = steiner_projection_monotonicity(P, nu, h2)
            assert after <= before * (1.0 + 1e-9)

    def test_degenerate_plane_rejected(self, cube):
        with pytest.raises(InputError):
            steiner_projection_monotonicity(cube, E3, E3)


class TestSchwartzRatioMonotonicity:
    def test_octahedron_equality(self, octahedron):
        before, after = schwartz_ratio_monotonicity(octahedron, E3)
        assert before == pytest.approx(6.0, abs=1e-9)
        assert after == pytest.approx(6.0, abs=1e-4)
        assert after <= before + 1e-6

    def test_cube_equality(self, cube):
        before, after = schwartz_ratio_monotonicity(cube, E3)
        assert (before, after) == pytest.approx((8.0, 8.0), abs=1e-9)

    def test_random(self, rng):
        for _ in range(40):
            P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
            x = rng.standard_normal(3)
            x /= np.linalg.norm(x)
            before, after = schwartz_ratio_monotonicity(P, x)
            assert after <= before + 1e-6


class TestRounding:
    def test_roundness_of_ball_mesh(self):
        r = roundness(fixtures.icosphere(2))
        assert 1.0 <= r < 1.02

    def test_iterated_steiner_trend(self, rng):
        P = fixtures.random_symmetric_polytope(rng, 8)
        # stretch it so the trend is unambiguous
        P = convex_hull(P.vertices * np.array([3.0, 1.0, 0.5]), symmetric=True)
        _, trace = steiner_rounding_run(P, steps=60, seed=4)
        assert trace[-1] < 0.6 * trace[0]
        assert trace[-1] < 1.5
