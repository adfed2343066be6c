# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

# Imports
import os
import json
import tempfile
import unittest
import numpy as np
from c1quad.quad_mesh import (
    CORNERS, QuadMesh, param_map, corner_determinants, edge_parameters,
    geometry_report, refine_regular, edge_orientation_sign, load_mesh,
    save_mesh)
from c1quad.mesh_generators import (
    unit_square_grid, l_shape, trapezoid, perturbed_grid,
    extraordinary_vertex, unstructured, holed_square, random_quad,
    random_mesh, generate)


UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestParamMap(unittest.TestCase):
    """ Test the bilinear element map.
    """
    def test_unit_square(self):
        position, jacobian = param_map(UNIT_SQUARE, [0, 0])
        np.testing.assert_allclose(position, [0, 0])
        np.testing.assert_allclose(jacobian, np.eye(2))
        position, _ = param_map(UNIT_SQUARE, [0.5, 0.5])
        np.testing.assert_allclose(position, [0.5, 0.5])

    def test_corner_interpolation(self):
        corners = np.array([[0, 0], [2, 0], [3, 2], [0, 1]], dtype=float)
        position, jacobian = param_map(corners, CORNERS)
        np.testing.assert_allclose(position, corners, atol=1e-15)
        self.assertEqual(jacobian.shape, (4, 2, 2))
        np.testing.assert_allclose(
            np.linalg.det(jacobian), corner_determinants(corners))

    def test_jacobian_finite_differences(self):
        rng = np.random.default_rng(3)
        corners = random_quad(rng)
        xi = rng.uniform(0.1, 0.9, size=(5, 2))
        _, jacobian = param_map(corners, xi)
        step = 1e-6
        for axis in range(2):
            shift = np.zeros(2)
            shift[axis] = step
            plus, _ = param_map(corners, xi + shift)
            minus, _ = param_map(corners, xi - shift)
            np.testing.assert_allclose(
                jacobian[:, :, axis], (plus - minus) / (2 * step), atol=1e-8)

    def test_edge_parameters(self):
        xi = edge_parameters(2, [0., 0.25, 1.])
        np.testing.assert_allclose(xi, [[1, 1], [0.75, 1], [0, 1]])

    def test_corner_determinants(self):
        np.testing.assert_allclose(corner_determinants(UNIT_SQUARE), 1.)


class TestQuadMesh(unittest.TestCase):
    """ Test the mesh topology and validation.
    """
    def test_edges(self):
        mesh = l_shape()
        self.assertEqual(mesh.n_vertices, 8)
        self.assertEqual(mesh.n_quads, 3)
        self.assertEqual(mesh.n_edges, 10)
        self.assertEqual(mesh.boundary_edges.sum(), 8)
        self.assertTrue(np.all(mesh.edges[:, 0] < mesh.edges[:, 1]))
        self.assertTrue(np.all(mesh.boundary_vertices))
        self.assertEqual(mesh.valences[4], 3)
        np.testing.assert_allclose(mesh.edge_normals[0], [0, 1])

    def test_orientation_signs(self):
        mesh = l_shape()
        for edge in np.flatnonzero(~mesh.boundary_edges):
            signs = [edge_orientation_sign(mesh, quad, local)
                     for quad, local in zip(mesh.edge_quads[edge],
                                            mesh.edge_local[edge])]
            self.assertEqual(sum(signs), 0)
        self.assertEqual(edge_orientation_sign(mesh, 0, 0), 1)

    def test_inward_normal_sign(self):
        mesh = unstructured()
        for quad in range(mesh.n_quads):
            corners = mesh.corners(quad)
            for local in range(4):
                tangent = corners[(local + 1) % 4] - corners[local]
                inward = np.array([-tangent[1], tangent[0]])
                inward /= np.linalg.norm(inward)
                edge = mesh.quad_edges[quad, local]
                np.testing.assert_allclose(
                    edge_orientation_sign(mesh, quad, local) * inward,
                    mesh.edge_normals[edge], atol=1e-14)

    def test_read_only(self):
        mesh = unit_square_grid(1)
        with self.assertRaises(ValueError):
            mesh.vertices[0, 0] = 1.

    def test_clockwise(self):
        with self.assertRaises(ValueError):
            QuadMesh(UNIT_SQUARE, [(0, 3, 2, 1)])

    def test_non_convex(self):
        vertices = [(0, 0), (1, 0), (0.3, 0.3), (0, 1)]
        with self.assertRaises(ValueError):
            QuadMesh(vertices, [(0, 1, 2, 3)])

    def test_bad_indices(self):
        with self.assertRaises(ValueError):
            QuadMesh(UNIT_SQUARE, [(0, 1, 2, 4)])
        with self.assertRaises(ValueError):
            QuadMesh(UNIT_SQUARE, [(0, 1, 2, 2)])
        with self.assertRaises(ValueError):
            QuadMesh(UNIT_SQUARE + [(2, 2)], [(0, 1, 2, 3)])

    def test_hanging_vertex(self):
        vertices = [(0, 0), (1, 0), (1, 1), (0, 1), (2, 0), (2, 0.5),
                    (1, 0.5), (2, 1)]
        quads = [(0, 1, 2, 3), (1, 4, 5, 6), (6, 5, 7, 2)]
        with self.assertRaises(ValueError):
            QuadMesh(vertices, quads)

    def test_same_direction(self):
        vertices = UNIT_SQUARE + [(1, 2), (0, 2)]
        with self.assertRaises(ValueError):
            QuadMesh(vertices, [(0, 1, 2, 3), (0, 1, 4, 5)])


class TestGeometry(unittest.TestCase):
    """ Test the shape quantities.
    """
    def test_unit_square(self):
        geometry = geometry_report(unit_square_grid(1))
        self.assertAlmostEqual(geometry.h, 1.)
        self.assertAlmostEqual(geometry.rho, np.pi / 4)
        np.testing.assert_allclose(geometry.min_dets, 1.)

    def test_rectangle(self):
        mesh = QuadMesh([(0, 0), (1, 0), (1, 2), (0, 2)], [(0, 1, 2, 3)])
        geometry = geometry_report(mesh)
        self.assertAlmostEqual(geometry.h, 2.)
        self.assertAlmostEqual(geometry.rho, np.arctan(0.5))

    def test_generated_meshes(self):
        rng = np.random.default_rng(0)
        for mesh in (l_shape(), trapezoid(1), perturbed_grid(3, seed=1),
                     extraordinary_vertex(3), extraordinary_vertex(6),
                     unstructured(), random_mesh(rng)):
            geometry = geometry_report(mesh)
            self.assertTrue(np.all(geometry.min_dets > 0))
            self.assertTrue(geometry.rho > 0)


class TestRefinement(unittest.TestCase):
    """ Test the regular refinement.
    """
    def test_counts(self):
        mesh = refine_regular(unit_square_grid(1))
        self.assertEqual(mesh.n_quads, 4)
        self.assertEqual(mesh.n_edges, 12)
        self.assertEqual(mesh.n_vertices, 9)

    def test_levels(self):
        mesh = unit_square_grid(1)
        for level in range(1, 4):
            mesh = refine_regular(mesh)
            self.assertEqual(mesh.n_quads, 4 ** level)
            self.assertAlmostEqual(geometry_report(mesh).h, 2. ** -level)

    def test_unstructured(self):
        mesh = unstructured()
        refined = refine_regular(mesh)
        self.assertEqual(refined.n_quads, 4 * mesh.n_quads)
        self.assertEqual(refined.n_vertices,
                         mesh.n_vertices + mesh.n_edges + mesh.n_quads)
        self.assertEqual(sorted(refined.valences[:mesh.n_vertices]),
                         sorted(mesh.valences))

    def test_trapezoid_not_parallelogram(self):
        for level in range(3):
            mesh = trapezoid(level)
            self.assertEqual(mesh.n_quads, 4 ** (level + 1))
            twists = [np.linalg.norm(
                corners[0] - corners[1] + corners[2] - corners[3]) /
                geometry_report(mesh).h_quads[idx]
                for idx, corners in enumerate(
                    mesh.vertices[mesh.quads])]
            self.assertGreater(min(twists), 0.1)


class TestGenerators(unittest.TestCase):
    """ Test the built-in generators.
    """
    def test_unstructured_valences(self):
        mesh = unstructured()
        interior = np.flatnonzero(~mesh.boundary_vertices)
        self.assertEqual(sorted(mesh.valences[interior]), [3, 5])
        self.assertEqual(mesh.n_quads, 6)
        np.testing.assert_array_equal(interior, [10, 11])
        self.assertEqual(mesh.valences[10], 5)
        self.assertEqual(mesh.valences[11], 3)

    def test_holed_square(self):
        mesh = holed_square()
        self.assertEqual(
            (mesh.n_quads, mesh.n_vertices, mesh.n_edges), (16, 24, 40))
        self.assertEqual(np.count_nonzero(mesh.boundary_edges), 16)
        interior = np.flatnonzero(~mesh.boundary_vertices)
        self.assertEqual(len(interior), 8)
        self.assertTrue(np.all(mesh.valences[interior] == 4))
        norms = np.abs(mesh.vertices).max(axis=1)
        self.assertTrue(np.all(norms > 0.4 - 1e-12))
        fine = refine_regular(mesh)
        self.assertEqual(fine.n_quads, 64)
        self.assertEqual(np.count_nonzero(fine.boundary_edges), 32)
        self.assertEqual(generate("holed-square", layers=1).n_quads, 8)
        with self.assertRaises(ValueError):
            holed_square(hole=1.)
        with self.assertRaises(ValueError):
            holed_square(layers=0)

    def test_extraordinary_vertex(self):
        mesh = extraordinary_vertex(5)
        self.assertEqual(mesh.n_quads, 5)
        self.assertEqual(mesh.valences[0], 5)
        with self.assertRaises(ValueError):
            extraordinary_vertex(2)

    def test_perturbed_grid(self):
        grid = unit_square_grid(3)
        mesh = perturbed_grid(3, magnitude=0.1, seed=4)
        shift = np.abs(mesh.vertices - grid.vertices)
        self.assertTrue(np.all(shift[grid.boundary_vertices] == 0))
        self.assertTrue(np.all(shift <= 0.1 / 3 + 1e-15))
        np.testing.assert_array_equal(
            mesh.vertices, perturbed_grid(3, magnitude=0.1, seed=4).vertices)

    def test_generate(self):
        mesh = generate("unit-square-grid", n=2)
        self.assertEqual(mesh.n_quads, 4)
        with self.assertRaises(ValueError):
            generate("circle")


class TestMeshFile(unittest.TestCase):
    """ Test the JSON mesh format.
    """
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_save_load(self):
        mesh = unstructured()
        path = save_mesh(mesh, os.path.join(self.tmpdir.name, "mesh.json"))
        loaded = load_mesh(path)
        np.testing.assert_allclose(loaded.vertices, mesh.vertices)
        np.testing.assert_array_equal(loaded.quads, mesh.quads)

    def test_missing_key(self):
        path = os.path.join(self.tmpdir.name, "mesh.json")
        with open(path, "wt") as open_file:
            json.dump({"vertices": UNIT_SQUARE}, open_file)
        with self.assertRaises(ValueError):
            load_mesh(path)

    def test_bad_json(self):
        path = os.path.join(self.tmpdir.name, "mesh.json")
        with open(path, "wt") as open_file:
            open_file.write("{vertices: ")
        with self.assertRaises(ValueError):
            load_mesh(path)


if __name__ == "__main__":
    unittest.main()
