import numpy as np
import pytest

from affpoints.bodies import random_body, random_map
from affpoints.ellipses import (
    Ellipse,
    john_ellipse,
    loewner_ellipse,
    max_centered_area,
    min_centered_inverse_area,
    verify_john_conditions,
)
from affpoints.errors import CertificationFailure, NoContacts
from affpoints.polygons import AffineMap, affine_apply, canonicalize
from conftest import random_bodies


class TestJohn:
    def test_square_unit_disk(self, square):
        E = john_ellipse(square)
        assert np.linalg.norm(E.center) < 1e-9
        assert np.allclose(E.shape, np.eye(2), atol=1e-9)

    def test_triangle_steiner(self, triangle):
        E = john_ellipse(triangle)
        assert np.allclose(E.center, (1 / 3, 1 / 3), atol=1e-9)
        assert E.area == pytest.approx(np.pi / (6 * np.sqrt(3)), abs=1e-9)

    def test_edges_respected(self):
        from affpoints.polygons import edge_normals

        for P in random_bodies(20, 51):
            E = john_ellipse(P)
            A, b = edge_normals(P)
            slack = b - A @ E.center - np.linalg.norm(A @ E.shape, axis=1)
            assert slack.min() > -1e-9 * P.diameter

    def test_equivariance(self):
        rng = np.random.default_rng(52)
        for P in random_bodies(15, 53):
            T = random_map(rng)
            E1 = john_ellipse(affine_apply(T, P))
            E2 = john_ellipse(P).affine_image(T)
            assert np.linalg.norm(E1.center - E2.center) < 1e-7 * P.diameter
            assert np.allclose(E1.shape @ E1.shape.T, E2.shape @ E2.shape.T,
                               rtol=1e-7, atol=1e-9)


class TestLoewner:
    def test_square_circle(self, square):
        E = loewner_ellipse(square)
        assert np.linalg.norm(E.center) < 1e-9
        assert np.allclose(E.shape, np.sqrt(2) * np.eye(2), atol=1e-9)

    def test_cross_unit_circle(self, cross):
        E = loewner_ellipse(cross)
        assert np.allclose(E.shape, np.eye(2), atol=1e-9)
        assert np.linalg.norm(E.center) < 1e-9

    def test_vertices_inside(self):
        for P in random_bodies(20, 54):
            E = loewner_ellipse(P)
            Minv = np.linalg.inv(E.shape)
            y = (P.vertices - E.center) @ Minv.T
            assert np.linalg.norm(y, axis=1).max() <= 1.0 + 1e-9

    def test_random_triangle_certified(self):
        rng = np.random.default_rng(55)
        for _ in range(10):
            P = canonicalize(rng.random((3, 2)) * 2.0)
            E = loewner_ellipse(P)
            cert = verify_john_conditions(P, E, "enclosing")
            assert cert.residual_identity < 1e-7
            assert np.linalg.norm(cert.residual_sum) < 1e-7


class TestCertificates:
    def test_square_inscribed(self, square):
        cert = verify_john_conditions(square, Ellipse((0, 0), np.eye(2)),
                                      "inscribed")
        assert len(cert.contacts) == 4
        assert cert.residual_identity < 1e-12

    def test_loose_disk_fails(self, square):
        with pytest.raises((NoContacts, CertificationFailure)):
            verify_john_conditions(square, Ellipse((0, 0), 0.9 * np.eye(2)),
                                   "inscribed")

    def test_triangle_steiner_contacts(self, triangle):
        cert = verify_john_conditions(triangle, john_ellipse(triangle),
                                      "inscribed")
        assert len(cert.contacts) == 3
        assert cert.residual_identity < 1e-9


class TestCenteredFields:
    def test_square_center(self, square):
        assert max_centered_area(square, (0, 0)) == pytest.approx(np.pi, abs=1e-8)

    def test_square_offset(self, square):
        assert max_centered_area(square, (0.5, 0.0)) == \
            pytest.approx(np.pi / 2, abs=1e-8)

    def test_boundary_zero(self, square):
        assert max_centered_area(square, (1.0, 0.0)) == 0.0

    def test_lambda_square(self, square):
        assert min_centered_inverse_area(square, (0, 0)) == \
            pytest.approx(1.0 / (2 * np.pi), abs=1e-9)

    def test_lambda_positive_and_scaling(self, triangle):
        rng = np.random.default_rng(56)
        T = random_map(rng)
        det = abs(np.linalg.det(T.matrix))
        for x in [(0.3, 0.3), (0.1, 0.2), (0.5, 0.1)]:
            v = min_centered_inverse_area(triangle, x)
            assert v > 0.0
            w = min_centered_inverse_area(affine_apply(T, triangle),
                                          T(np.asarray(x)))
            assert w * det == pytest.approx(v, rel=1e-7)

    def test_sqrt_concavity(self, triangle):
        rng = np.random.default_rng(57)
        for _ in range(25):
            lam = rng.random(3)
            lam /= lam.sum()
            x = lam @ triangle.vertices
            lam = rng.random(3)
            lam /= lam.sum()
            y = lam @ triangle.vertices
            t = rng.random()
            mid = t * x + (1 - t) * y
            lhs = np.sqrt(max_centered_area(triangle, mid))
            rhs = t * np.sqrt(max_centered_area(triangle, x)) + \
                (1 - t) * np.sqrt(max_centered_area(triangle, y))
            assert lhs >= rhs - 1e-8


class TestEllipseDuality:
    def test_loewner_is_polar_of_john(self):
        # the inscribed ellipse of P, recentred, is polar-dual to the
        # enclosing ellipse of the polar body about the same point
        from affpoints.polygons import polar_about

        for P in random_bodies(10, 58):
            J = john_ellipse(P)
            Q = polar_about(P, J.center)
            L = loewner_ellipse(Q)
            polar = Ellipse(np.zeros(2), J.shape).polar()
            assert np.linalg.norm(L.center) < 1e-6
            assert np.allclose(L.shape @ L.shape.T, polar.shape @ polar.shape.T,
                               rtol=1e-6, atol=1e-8)

    def test_monotone_in_nesting(self, square):
        inner = canonicalize(square.vertices * 0.7)
        assert john_ellipse(inner).area <= john_ellipse(square).area + 1e-9
