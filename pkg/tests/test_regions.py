import numpy as np
import pytest

from affpoints.bodies import random_body, random_map
from affpoints.errors import BadParams
from affpoints.points import santalo_point, symcore_point
from affpoints.regions import (
    floating_body,
    illumination_body,
    john_region,
    santalo_region,
    symcore_region,
)
from affpoints.polygons import affine_apply, canonicalize, hausdorff, support
from conftest import random_bodies


class TestFloating:
    def test_zero_delta(self, square):
        assert floating_body(square, 0.0) is square

    def test_square_chord_offset(self, square):
        F = floating_body(square, 1 / 8, 256)
        # along an axis the cutting chord sits at 1 - 2*delta
        assert support(F, (1.0, 0.0)) <= 1 - 2 * (1 / 8) + 1e-10
        assert F.contains((0.0, 0.0))
        assert all(square.contains(v, tol=1e-10) for v in F.vertices)

    def test_monotone_in_delta(self, triangle):
        F1 = floating_body(triangle, 0.02, 128)
        F2 = floating_body(triangle, 0.08, 128)
        assert all(F1.contains(v, tol=1e-9) for v in F2.vertices)

    def test_bad_delta(self, square):
        with pytest.raises(BadParams):
            floating_body(square, 0.5)


class TestIllumination:
    def test_zero_delta(self, square):
        assert illumination_body(square, 0.0) is square

    def test_square_axis_point(self, square):
        I = illumination_body(square, 0.07, 256)
        # apex at (1 + t, 0) adds a triangle of area t, so t = 4 * delta
        assert support(I, (1.0, 0.0)) == pytest.approx(1 + 4 * 0.07, abs=1e-3)

    def test_contains_body(self):
        for P in random_bodies(5, 81):
            I = illumination_body(P, 0.05, 128)
            assert all(I.contains(v, tol=1e-9 * P.diameter) for v in P.vertices)

    def test_monotone_in_delta(self, triangle):
        I1 = illumination_body(triangle, 0.02, 128)
        I2 = illumination_body(triangle, 0.08, 128)
        assert all(I2.contains(v, tol=1e-9) for v in I1.vertices)


class TestSandwich:
    def test_floating_inside_illumination(self):
        for P in random_bodies(5, 82):
            F = floating_body(P, 0.05, 128)
            I = illumination_body(P, 0.05, 128)
            tol = 1e-9 * P.diameter
            assert all(P.contains(v, tol=tol) for v in F.vertices)
            assert all(I.contains(v, tol=tol) for v in P.vertices)


class TestSantaloRegion:
    def test_contains_center_and_shrinks(self, square):
        S = santalo_region(square, 1e-4, 128)
        assert S.contains(santalo_point(square).value)
        assert S.diameter < 0.1 * square.diameter

    def test_convexity_probe(self, triangle):
        S = santalo_region(triangle, 0.5, 64)
        v = S.vertices
        mids = 0.5 * (v + np.roll(v, -1, axis=0))
        from affpoints.polygons import polar_about
        s = santalo_point(triangle).value
        target = (1 + 0.5) * polar_about(triangle, s).area
        for x in mids:
            assert polar_about(triangle, x).area <= target * (1 + 1e-6)


class TestJohnRegion:
    def test_square_symmetric(self, square):
        J = john_region(square, 0.5, 64)
        Jr = canonicalize(-J.vertices)
        assert hausdorff(J, Jr) < 2 * np.pi / 64 * square.diameter

    def test_collapse_near_one(self, square):
        J = john_region(square, 0.999, 64)
        assert J.diameter < 0.1 * square.diameter


class TestSymcoreRegion:
    def test_square_symmetric(self, square):
        M = symcore_region(square, 0.5, 128)
        Mr = canonicalize(-M.vertices)
        assert hausdorff(M, Mr) < 2 * np.pi / 128 * square.diameter

    def test_collapse_near_one(self, triangle):
        M = symcore_region(triangle, 0.999, 64)
        m0 = symcore_point(triangle).value
        assert M.contains(m0, tol=1e-6)
        assert M.diameter < 0.15 * triangle.diameter


class TestEquivariance:
    # full-resolution equivariance is covered by the acceptance suite;
    # here a coarse grid keeps the unit tests quick
    def test_all_maps(self):
        rng = np.random.default_rng(83)
        P = random_body(8, 12, affine=False)
        T = random_map(rng)
        Q = affine_apply(T, P)
        budget = 2 * (2 * np.pi / 64) * Q.diameter
        cases = [
            (lambda B: floating_body(B, 0.05, 64), 1.0),
            (lambda B: illumination_body(B, 0.1, 64), 1.0),
            (lambda B: santalo_region(B, 0.3, 64), 1.0),
            (lambda B: john_region(B, 0.5, 64), 1.0),
            (lambda B: symcore_region(B, 0.5, 64), 1.0),
        ]
        for fn, scale in cases:
            d = hausdorff(fn(Q), affine_apply(T, fn(P)))
            assert d < budget * scale
