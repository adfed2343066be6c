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
import pandas as pd
from c1quad.mesh_generators import unit_square_grid
from c1quad.spline_basis import make_knots
from c1quad.global_space import GlobalSpace
from c1quad.functions import (
    SmoothFunction, PolynomialFunction, monomial, random_polynomial,
    get_problem, PROBLEMS)
from c1quad.interpolation import project_global
from c1quad.stat_utils import (
    gauss_points, sample_points, quad_rule, error_norms, convergence_rates)


class TestFunctions(unittest.TestCase):
    """ Test the smooth functions.
    """
    def setUp(self):
        self.points = np.random.default_rng(0).uniform(0, 1, size=(5, 2))

    def test_problems(self):
        for name in PROBLEMS:
            func = get_problem(name)
            func.check_derivatives()
            self.assertTrue(func.has_bilaplacian)
            self.assertEqual(func.derivatives(self.points).shape, (6, 5))
        with self.assertRaises(ValueError):
            get_problem("sin-sin")

    def test_bad_gradient(self):
        with self.assertRaises(ValueError):
            SmoothFunction(
                lambda x: x[:, 0] ** 2,
                lambda x: np.stack((x[:, 0], 0 * x[:, 0]), axis=1),
                lambda x: np.stack((2 + 0 * x[:, 0], 0 * x[:, 0],
                                    0 * x[:, 0]), axis=1))

    def test_missing_bilaplacian(self):
        func = SmoothFunction(
            lambda x: x[:, 0], lambda x: np.stack(
                (np.ones(len(x)), np.zeros(len(x))), axis=1),
            lambda x: np.zeros((len(x), 3)))
        self.assertFalse(func.has_bilaplacian)
        with self.assertRaises(ValueError):
            func.bilaplacian(self.points)
        np.testing.assert_allclose(
            func.normal_derivative(self.points, [0.6, 0.8]), 0.6)

    def test_polynomial(self):
        func = monomial(2, 2) + 3 * monomial(4, 0)
        self.assertEqual(func.degree, 4)
        np.testing.assert_allclose(func.bilaplacian(self.points), 72 + 8)
        func.check_derivatives()
        product = monomial(1, 0) * monomial(0, 2)
        np.testing.assert_allclose(
            product(self.points), self.points[:, 0] * self.points[:, 1] ** 2)
        random = random_polynomial(np.random.default_rng(1), 3)
        self.assertLessEqual(random.degree, 3)

    def test_manufactured(self):
        homogeneous = get_problem("homogeneous")
        edge = np.stack((np.linspace(0, 1, 5), np.zeros(5)), axis=1)
        np.testing.assert_allclose(homogeneous(edge), 0., atol=1e-15)
        np.testing.assert_allclose(homogeneous.gradient(edge), 0.,
                                   atol=1e-15)
        self.assertAlmostEqual(homogeneous([[0.5, 0.5]])[0], 200 / 256)
        trapezoid = get_problem("trapezoid")
        self.assertAlmostEqual(trapezoid([[1., 1.]])[0], 1 / 4 * (-3) ** 2)
        cos_sin = get_problem("cos-sin")
        np.testing.assert_allclose(cos_sin.bilaplacian(self.points),
                                   cos_sin(self.points) / 4)


class TestQuadrature(unittest.TestCase):
    """ Test the quadrature rules and the error norms.
    """
    def test_gauss_points(self):
        knots = make_knots(4, 2, 2)
        xi, weights = gauss_points(knots, 6)
        self.assertEqual(len(xi), 144)
        self.assertAlmostEqual(weights.sum(), 1.)
        self.assertAlmostEqual(weights @ (xi[:, 0] ** 9 * xi[:, 1] ** 4),
                               1 / 50)

    def test_sample_points(self):
        xi = sample_points(make_knots(3, 3, 1), n_samples=4)
        self.assertEqual(len(xi), 100)
        self.assertAlmostEqual(xi.min(), 0.)
        self.assertAlmostEqual(xi.max(), 1.)

    def test_quad_rule(self):
        corners = np.array([[0, 0], [2, 0], [3, 2], [0, 1]], dtype=float)
        _, positions, weights = quad_rule(corners, make_knots(5, 1, 3), 4)
        self.assertAlmostEqual(weights.sum(), 3.5)
        self.assertAlmostEqual(weights @ positions[:, 0] / 3.5, 29 / 21)

    def test_error_norms(self):
        space = GlobalSpace(unit_square_grid(2), 5)
        func = monomial(1, 1)
        coefficients = project_global(space, func)
        errors = error_norms(space, coefficients, func)
        self.assertLess(errors.linf, 1e-12)
        self.assertLess(errors.h2_rel, 1e-10)
        errors = error_norms(space, np.zeros(space.dimension), func)
        self.assertAlmostEqual(errors.l2_rel, 1.)
        self.assertAlmostEqual(errors.h1, np.sqrt(2 / 3))
        self.assertAlmostEqual(errors.h2, np.sqrt(2.))
        errors = error_norms(space, coefficients, PolynomialFunction([[1.]]))
        self.assertAlmostEqual(errors.h1, np.sqrt(2 / 3))
        self.assertTrue(np.isfinite(errors.l2_rel))
        self.assertTrue(np.isnan(errors.h1_rel))
        self.assertTrue(np.isnan(errors.h2_rel))

    def test_rates(self):
        np.testing.assert_allclose(
            convergence_rates([1., 2. ** -6, 2. ** -12]), [6., 6.])
        np.testing.assert_allclose(
            convergence_rates([1., 0.25], h=[1., 0.5]), [2.])
        frame = pd.DataFrame({"err": [1., 0.5, 0.125]})
        rates = convergence_rates(frame)
        self.assertTrue(np.isnan(rates["err"].iloc[0]))
        np.testing.assert_allclose(rates["err"].values[1:], [1., 2.])


if __name__ == "__main__":
    unittest.main()
