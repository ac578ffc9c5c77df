"""Tests for tangent cones, their closed-form eigen-data, focal limits and cone fitting."""

import numpy as np
import pytest

from cone.quadric_cone import (
    ConeClass,
    CircularCone,
    circular_parameters,
    classify,
    cone_matrix,
    membership_residual,
    same_cone,
)
from confocal.system import confocal_coords, make_system, surface_residual
from linalg3.eigen import eigen_sym3
from tangent_cone.fitting import constraint_rows, fit_cone_through_points
from tangent_cone.tangent_cone import (
    degenerate_cone_matrix,
    degenerate_eigenvalues,
    discriminant_residual,
    product_eigenvalues,
    tangent_cone_eigensystem,
    tangent_cone_matrix,
    unified_eigenvalues,
)
from utils.errors import (
    ApexOnConfocalSurface,
    ApexOnSurface,
    DegenerateRay,
    InvalidInput,
    RankDeficient,
)
from viewpoint.viewing_cone import Conic, embed_conic, viewing_cone


def draw_ell(rng, system, coords, margin=0.1):
    """A family parameter away from a, b, c and the apex's coordinates."""
    a, b, c = system.canonical
    avoid = (*system.canonical, *coords)
    while True:
        ell = rng.uniform(c - 3.0, a + 3.0)
        if min(abs(ell - v) for v in avoid) >= margin:
            return ell


class TestTangentCone:
    def test_matrix_agrees_with_discriminant(self, rng, random_system, generic_point):
        for _ in range(200):
            system = random_system(rng)
            u = generic_point(rng)
            ell = draw_ell(rng, system, confocal_coords(system, u))
            cone = tangent_cone_matrix(system, u, ell)
            for x in rng.normal(size=(5, 3)) * 2.0:
                expected = discriminant_residual(system, u, ell, x)
                got = membership_residual(cone, x)
                assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected), cone.matrix.max_abs())

    def test_closed_form_eigen_data(self, rng, random_system, generic_point):
        for _ in range(300):
            system = random_system(rng)
            u = generic_point(rng)
            coords = confocal_coords(system, u)
            ell = draw_ell(rng, system, coords)
            eig = tangent_cone_eigensystem(system, u, ell)
            k = tangent_cone_matrix(system, u, ell).matrix
            scale = k.max_abs()
            vectors = eig.unit_vectors()
            for i in range(3):
                v = vectors[:, i]
                assert np.linalg.norm(k.apply(v) - eig.eigenvalues[i] * v) <= 1e-8 * scale
            assert np.allclose(
                np.sort(eig.eigenvalues), eigen_sym3(k).eigenvalues, atol=1e-8 * scale
            )
            unified = unified_eigenvalues(system, u, ell, coords)
            assert np.allclose(unified, eig.eigenvalues, atol=1e-8 * np.max(np.abs(unified)))

    def test_principal_directions_do_not_depend_on_the_surface(self, system421):
        u = np.array([1.0, 0.7, -0.5])
        normals = tangent_cone_eigensystem(system421, u, -2.0).unit_vectors()
        for ell in (-3.0, -1.5, -0.2, 0.7, 1.25, 1.8, 2.3, 2.8, 3.6, 5.0):
            vectors = eigen_sym3(tangent_cone_matrix(system421, u, ell).matrix).eigenvectors
            for i in range(3):
                assert np.max(np.abs(normals.T @ vectors[:, i])) >= 1.0 - 1e-8

    def test_real_cone_exactly_between_the_outer_coordinates(self, rng, random_system, generic_point):
        for _ in range(50):
            system = random_system(rng)
            u = generic_point(rng)
            coords = confocal_coords(system, u)
            avoid = (*system.canonical, *coords)
            for ell in np.linspace(coords.k1 - 2.0, system.canonical[0] + 3.0, 80):
                if min(abs(ell - v) for v in avoid) < 0.2:
                    continue
                expected = ConeClass.REAL_CONE if coords.k1 < ell < coords.k3 else ConeClass.POINT_ONLY
                assert classify(tangent_cone_matrix(system, u, ell).matrix) is expected

    def test_cones_inside_the_window_are_not_circular(self, rng, random_system, generic_point):
        for _ in range(100):
            system = random_system(rng)
            u = generic_point(rng)
            coords = confocal_coords(system, u)
            ell = draw_ell(rng, system, coords, margin=0.2)
            while not coords.k1 < ell < coords.k3:
                ell = draw_ell(rng, system, coords, margin=0.2)
            values = np.sort(tangent_cone_eigensystem(system, u, ell).eigenvalues)
            assert np.min(np.diff(values)) >= 1e-6 * np.max(np.abs(values))
            matrix = tangent_cone_matrix(system, u, ell).matrix
            assert classify(matrix) is ConeClass.REAL_CONE
            assert circular_parameters(matrix) is None

    def test_apex_on_the_surface(self, system421):
        u = np.array([np.sqrt(2.0), 1.0, 0.0])
        assert abs(surface_residual(system421, 0.0, u)) < 1e-12
        with pytest.raises(ApexOnSurface):
            tangent_cone_matrix(system421, u, 0.0)

    def test_parameter_on_a_confocal_surface_of_the_apex(self, system421):
        u = np.array([1.0, 1.0, 1.0])
        coords = confocal_coords(system421, u)
        with pytest.raises(ApexOnConfocalSurface):
            tangent_cone_eigensystem(system421, u, coords.k2)

    def test_product_and_unified_forms(self, system421):
        u = np.array([0.8, -1.2, 0.6])
        coords = confocal_coords(system421, u)
        ell = -0.5
        assert np.allclose(
            product_eigenvalues(system421, coords, ell),
            unified_eigenvalues(system421, u, ell, coords),
            rtol=1e-10,
        )


class TestDegenerateCones:
    @pytest.mark.parametrize("u", [(1.0, 0.7, -0.5), (-2.0, 1.5, 0.4), (0.3, -0.6, 1.8)])
    def test_sign_patterns(self, system421, u):
        coords = confocal_coords(system421, u)
        l1, l2, l3 = degenerate_eigenvalues(system421, coords, "c")
        assert l1 > 0 > l3 > l2
        l1, l2, l3 = degenerate_eigenvalues(system421, coords, "b")
        assert l3 < 0 < l1 < l2
        l1, l2, l3 = degenerate_eigenvalues(system421, coords, "a")
        assert 0 < l1 < l2 < l3

    def test_classification(self, system421):
        u = (1.0, 0.7, -0.5)
        assert classify(degenerate_cone_matrix(system421, u, "c").matrix) is ConeClass.REAL_CONE
        assert classify(degenerate_cone_matrix(system421, u, "b").matrix) is ConeClass.REAL_CONE
        assert classify(degenerate_cone_matrix(system421, u, "a").matrix) is ConeClass.POINT_ONLY

    @pytest.mark.parametrize("critical", ["a", "b", "c"])
    def test_limit_of_scaled_tangent_cones(self, rng, generic_point, critical):
        system = make_system(4.0, 2.0, 1.0)
        m = system.role_value(critical)
        for _ in range(20):
            u = generic_point(rng)

            def scaled(h):
                # (m - ell) K at ell = m - h
                return h * tangent_cone_matrix(system, u, m - h).matrix.array

            expected = degenerate_cone_matrix(system, u, critical).matrix.array
            scale = np.max(np.abs(expected))
            for k in range(3, 7):
                for h in (10.0 ** -k, -(10.0 ** -k)):
                    # second-order Richardson: error O(h^3)
                    extrapolated = (8.0 * scaled(h / 4.0) - 6.0 * scaled(h / 2.0) + scaled(h)) / 3.0
                    assert np.max(np.abs(extrapolated - expected)) <= 1e-6 * max(1.0, scale)

    @pytest.mark.parametrize("alpha, beta", [(3.0, 1.0), (2.0, -1.0), (5.0, 0.5)])
    def test_cone_over_the_conic_matches_a_fit(self, rng, alpha, beta):
        conic = Conic(alpha, beta)
        embedding = embed_conic(conic)
        points = embedding.conic_curve.sample(40)
        for _ in range(20):
            u = rng.uniform(0.3, 2.0, 3) * rng.choice([-1.0, 1.0], 3)
            cone = degenerate_cone_matrix(embedding.system, u, embedding.critical)
            fit = fit_cone_through_points(u, points)
            assert same_cone(fit.matrix, cone.matrix, tol=1e-9)

    @pytest.mark.parametrize("alpha, beta", [(3.0, 1.0), (2.0, -1.0)])
    @pytest.mark.parametrize("t", [0.4, 1.1, -0.7])
    def test_near_locus_cones_are_nearly_circular(self, alpha, beta, t):
        conic = Conic(alpha, beta)
        embedding = embed_conic(conic)
        view = viewing_cone(conic, t)
        offset = np.zeros(3)
        offset[embedding.locus.plane_axis] = 1e-6
        matrix = degenerate_cone_matrix(embedding.system, view.cone.apex + offset, embedding.critical).matrix
        params = circular_parameters(matrix, rel_gap=1e-4)
        assert params is not None
        assert abs(abs(params.axis @ view.cone.axis) - 1.0) <= 1e-5
        assert abs(params.aperture - view.cone.aperture) <= 1e-5


class TestFitting:
    def test_recovers_a_circular_cone(self, rng, unit_vector):
        for _ in range(20):
            cone = CircularCone(rng.normal(size=3), unit_vector(rng), rng.uniform(0.2, 1.3))
            phases = rng.uniform(0.0, 2.0 * np.pi, 12)
            points = [cone.apex + rng.uniform(0.5, 2.0) * cone.ray(p) for p in phases]
            fit = fit_cone_through_points(cone.apex, points)
            assert same_cone(fit.matrix, cone_matrix(cone.axis, cone.aperture), tol=1e-10)
            assert fit.residual <= 1e-10
            assert abs(fit.matrix.frobenius_norm() - 1.0) <= 1e-12

    def test_planar_directions_are_rank_deficient(self, rng):
        points = np.column_stack([rng.normal(size=(12, 2)), np.zeros(12)])
        with pytest.raises(RankDeficient):
            fit_cone_through_points([0.0, 0.0, 0.0], points)

    def test_plane_pair_is_degenerate(self):
        points = [
            (1.0, 0.5, 0.0), (1.0, -1.0, 0.0), (0.3, 2.0, 0.0),
            (0.0, 1.0, 1.0), (0.0, 2.0, -1.0), (0.0, 0.5, 3.0),
        ]
        fit = fit_cone_through_points([0.0, 0.0, 0.0], points)
        assert classify(fit.matrix) is ConeClass.DEGENERATE
        assert abs(abs(fit.matrix.m13) - np.sqrt(0.5)) <= 1e-10

    def test_point_at_the_apex(self):
        with pytest.raises(DegenerateRay):
            constraint_rows([1.0, 1.0, 1.0], [(1.0, 1.0, 1.0), (2.0, 0.0, 1.0)])

    def test_bad_shape(self):
        with pytest.raises(InvalidInput):
            constraint_rows([0.0, 0.0, 0.0], [1.0, 2.0, 3.0])
