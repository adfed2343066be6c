# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

# Imports
import unittest
import numpy as np
from c1quad.mesh_generators import (
    unit_square_grid, l_shape, extraordinary_vertex, unstructured,
    random_mesh)
from c1quad.global_space import (
    expected_dimension, enumerate_dofs, local_to_global, GlobalSpace,
    check_c1)


class TestDofSet(unittest.TestCase):
    """ Test the global numbering.
    """
    def test_dimension(self):
        self.assertEqual(enumerate_dofs(unit_square_grid(1), 5).dimension,
                         32)
        self.assertEqual(enumerate_dofs(unit_square_grid(1), 3).dimension,
                         44)
        self.assertEqual(enumerate_dofs(unit_square_grid(2), 4).dimension,
                         102)

    def test_dimension_formula(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            mesh = random_mesh(rng, n=int(rng.integers(1, 4)))
            for degree in (3, 4, 5):
                dofs = enumerate_dofs(mesh, degree)
                self.assertEqual(dofs.dimension,
                                 expected_dimension(mesh, degree))
                self.assertEqual(len(dofs.labels), dofs.dimension)

    def test_coverage(self):
        mesh = unstructured()
        dofs = enumerate_dofs(mesh, 4, 3)
        counts = np.bincount(dofs.indices.ravel(), minlength=len(dofs))
        self.assertTrue(np.all(counts >= 1))
        faces = np.arange(dofs.face_offset, dofs.dimension)
        np.testing.assert_array_equal(counts[faces], 1)
        for quad in range(mesh.n_quads):
            owned = dofs.indices[quad][-dofs.n_faces:]
            self.assertTrue(np.all([dofs.labels[idx].anchor == quad
                                    for idx in owned]))

    def test_signs(self):
        mesh = l_shape()
        dofs = enumerate_dofs(mesh, 5)
        for edge in np.flatnonzero(~mesh.boundary_edges):
            signs = []
            for quad, local in zip(mesh.edge_quads[edge],
                                   mesh.edge_local[edge]):
                column = 24 + dofs.per_edge * local
                self.assertEqual(dofs.indices[quad, column],
                                 dofs.edge_offset + dofs.per_edge * edge)
                signs.append(dofs.signs[quad, column])
            self.assertEqual(sorted(signs), [-1, 1])
        self.assertTrue(np.all(dofs.signs[:, :24] == 1))
        self.assertTrue(np.all(dofs.signs[:, -dofs.n_faces:] == 1))

    def test_extraordinary_vertex(self):
        mesh = extraordinary_vertex(5)
        dofs = enumerate_dofs(mesh, 5)
        for quad in range(mesh.n_quads):
            indices, _ = local_to_global(mesh, dofs, quad)
            local = list(mesh.quads[quad]).index(0)
            np.testing.assert_array_equal(
                indices[6 * local: 6 * local + 6], np.arange(6))

    def test_other_mesh(self):
        dofs = enumerate_dofs(unit_square_grid(1), 5)
        with self.assertRaises(AssertionError):
            local_to_global(unit_square_grid(1), dofs, 0)

    def test_boundary_dofs(self):
        dofs = enumerate_dofs(unit_square_grid(1), 5)
        boundary = dofs.boundary_dofs()
        self.assertEqual(len(boundary), 28)
        np.testing.assert_array_equal(
            np.setdiff1d(np.arange(32), boundary), np.arange(28, 32))
        dofs = enumerate_dofs(unit_square_grid(2), 5)
        interior = np.setdiff1d(np.arange(len(dofs)), dofs.boundary_dofs())
        self.assertEqual(len(interior), 6 + 4 + 4 * 4)


class TestC1(unittest.TestCase):
    """ Test the smoothness of random global functions.
    """
    def check(self, mesh, degree, segments=None, builder="explicit"):
        space = GlobalSpace(mesh, degree, segments, builder=builder)
        coefficients = np.random.default_rng(7).standard_normal(
            space.dimension)
        report = check_c1(space, coefficients)
        self.assertLess(report.value_jump, 1e-8)
        self.assertLess(report.gradient_jump, 1e-8)
        self.assertLess(report.hessian_jump, 1e-8)
        return space, coefficients

    def test_unstructured(self):
        for degree in (3, 4, 5):
            self.check(unstructured(), degree)

    def test_extraordinary_vertex(self):
        self.check(extraordinary_vertex(5), 5)
        self.check(extraordinary_vertex(3), 4)

    def test_numeric(self):
        self.check(unstructured(), 5, segments=2, builder="numeric")
        self.check(l_shape(), 6)

    def test_flipped_sign(self):
        space, coefficients = self.check(unstructured(), 5)
        space.dofs.signs = np.ones_like(space.dofs.signs)
        report = check_c1(space, coefficients)
        self.assertGreater(report.gradient_jump, 1e-3)
        self.assertLess(report.value_jump, 1e-8)

    def test_evaluate(self):
        space = GlobalSpace(unit_square_grid(1), 5)
        coefficients = np.zeros(space.dimension)
        coefficients[0] = 1
        values = space.evaluate(coefficients, 0, [0, 0])
        np.testing.assert_allclose(values[:, 0], [1, 0, 0, 0, 0, 0],
                                   atol=1e-10)
        self.assertEqual(space.evaluate(
            coefficients, 0, np.full((3, 2), 0.5), order=1).shape, (3, 3))


if __name__ == "__main__":
    unittest.main()
