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
from c1quad.spline_basis import (
    make_knots, greville, basis_matrix, bernstein_eval, bernstein_matrix,
    bspline_eval, collocation_solve, dual_functionals, span,
    embedding_matrix)


class TestKnots(unittest.TestCase):
    """ Test the knot vectors.
    """
    def test_dimensions(self):
        for degree, segments, regularity, dimension in (
                (5, 1, 3, 6), (4, 2, 2, 7), (3, 3, 1, 8), (4, 2, 3, 6),
                (3, 3, 2, 6), (5, 2, 3, 8)):
            knots = make_knots(degree, segments, regularity)
            self.assertEqual(knots.dimension, dimension)

    def test_bernstein_case(self):
        knots = make_knots(5, 1, 3)
        np.testing.assert_array_equal(
            knots.knots, [0] * 6 + [1] * 6)
        np.testing.assert_allclose(greville(knots), np.arange(6) / 5)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            make_knots(4, 0, 2)
        with self.assertRaises(ValueError):
            make_knots(4, 2, 1)

    def test_spans(self):
        knots = make_knots(3, 3, 1)
        np.testing.assert_allclose(
            knots.spans, [[0, 1 / 3], [1 / 3, 2 / 3], [2 / 3, 1]])

    def test_equality(self):
        self.assertEqual(make_knots(4, 2, 2), make_knots(4, 2, 2))
        self.assertNotEqual(make_knots(4, 2, 2), make_knots(4, 2, 3))
        self.assertNotEqual(make_knots(4, 2, 2), "knots")
        self.assertEqual(
            len({make_knots(3, 3, 1), make_knots(3, 3, 1),
                 make_knots(5, 1, 3)}), 2)


class TestBernstein(unittest.TestCase):
    """ Test the Bernstein polynomials.
    """
    def test_midpoint(self):
        evaluation = bernstein_eval(5, 0.5)
        np.testing.assert_allclose(
            evaluation.values, np.array([1, 5, 10, 10, 5, 1]) / 32)

    def test_derivatives(self):
        points = np.linspace(0, 1, 7)
        knots = make_knots(5, 1, 3)
        for order in range(3):
            np.testing.assert_allclose(
                bernstein_matrix(5, points, order=order),
                basis_matrix(knots, points, order=order), atol=1e-12)

    def test_order(self):
        with self.assertRaises(ValueError):
            bernstein_eval(5, 0.5, order=3)
        with self.assertRaises(ValueError):
            bernstein_eval(5, 1.5)


class TestBSplines(unittest.TestCase):
    """ Test the B-spline evaluation and the dual functionals.
    """
    def setUp(self):
        self.points = np.linspace(0, 1, 23)

    def test_partition_of_unity(self):
        for degree, segments in ((5, 1), (4, 2), (3, 3)):
            knots = make_knots(degree, segments, degree - 2)
            values = basis_matrix(knots, self.points)
            np.testing.assert_allclose(values.sum(axis=1), 1., atol=1e-14)
            self.assertTrue(np.all(values >= -1e-15))
            np.testing.assert_allclose(
                basis_matrix(knots, self.points, order=1).sum(axis=1), 0.,
                atol=1e-11)

    def test_point_evaluation(self):
        knots = make_knots(4, 2, 2)
        evaluation = bspline_eval(knots, 0.3, order=2)
        self.assertEqual(evaluation.order, 2)
        np.testing.assert_allclose(
            evaluation.second, basis_matrix(knots, [0.3], order=2)[0])
        self.assertTrue(np.all(evaluation.values[evaluation.indices] > 0))
        with self.assertRaises(ValueError):
            bspline_eval(knots, -0.1)

    def test_polynomial_reproduction(self):
        for degree, segments in ((5, 1), (4, 2), (3, 3), (5, 3)):
            knots = make_knots(degree, segments, degree - 2)

            def func(x):
                return 1 - 2 * x + 3 * x ** degree

            coeffs = dual_functionals(knots, func)
            np.testing.assert_allclose(
                span(knots, coeffs, self.points), func(self.points),
                atol=1e-12)

    def test_collocation(self):
        knots = make_knots(3, 3, 1)
        coeffs = np.random.default_rng(0).standard_normal(knots.dimension)
        values = span(knots, coeffs, greville(knots))
        np.testing.assert_allclose(
            collocation_solve(knots, values), coeffs, atol=1e-12)

    def test_embedding(self):
        for degree, segments in ((4, 2), (3, 3), (5, 2)):
            fine = make_knots(degree, segments, degree - 2)
            coarse = make_knots(degree, segments, degree - 1)
            embedding = embedding_matrix(coarse, fine)
            self.assertEqual(embedding.shape,
                             (fine.dimension, coarse.dimension))
            np.testing.assert_allclose(
                basis_matrix(fine, self.points) @ embedding,
                basis_matrix(coarse, self.points), atol=1e-12)


if __name__ == "__main__":
    unittest.main()
