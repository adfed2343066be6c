# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Smooth functions with analytic derivatives, bivariate polynomials and the
registered manufactured solutions.

Derivatives are returned in the layout of the basis evaluations: value,
dx, dy, dxx, dxy, dyy along the first axis.
"""

# Imports
import numpy as np
from numpy.polynomial import polynomial as P
from scipy.signal import convolve2d


FD_STEP = 1e-5
FD_TOL = 1e-5


class SmoothFunction(object):
    """ Function of two variables given by value, gradient and Hessian
    callbacks.

    All the callbacks take an (M, 2) array of physical points: value returns
    (M, ), gradient (M, 2) and hessian (M, 3) ordered dxx, dxy, dyy. The
    optional bilaplacian callback returns (M, ).
    """
    def __init__(self, value, gradient, hessian, bilaplacian=None,
                 name="function", check=True):
        self._value = value
        self._gradient = gradient
        self._hessian = hessian
        self._bilaplacian = bilaplacian
        self.name = name
        if check:
            self.check_derivatives()

    def __repr__(self):
        return f"{self.__class__.__name__}({self.name})"

    def __call__(self, points):
        return self.value(points)

    def value(self, points):
        return np.asarray(self._value(np.atleast_2d(points)), dtype=float)

    def gradient(self, points):
        return np.asarray(self._gradient(np.atleast_2d(points)), dtype=float)

    def hessian(self, points):
        return np.asarray(self._hessian(np.atleast_2d(points)), dtype=float)

    def bilaplacian(self, points):
        if self._bilaplacian is None:
            raise ValueError(f"No bilaplacian available for {self.name}.")
        return np.asarray(
            self._bilaplacian(np.atleast_2d(points)), dtype=float)

    def normal_derivative(self, points, normals):
        """ Derivative along unit normals: array (M, 2) or (2, ).
        """
        return np.sum(self.gradient(points) * normals, axis=-1)

    @property
    def has_bilaplacian(self):
        return self._bilaplacian is not None

    def derivatives(self, points, order=2):
        """ Stack the value and the derivatives up to order.

        Returns
        -------
        values: array (1, 3 or 6, M)
            the value, dx, dy, dxx, dxy and dyy.
        """
        stack = [self.value(points)[None]]
        if order >= 1:
            stack.append(self.gradient(points).T)
        if order >= 2:
            stack.append(self.hessian(points).T)
        return np.concatenate(stack, axis=0)

    def check_derivatives(self, n_points=4, seed=0):
        """ Compare the gradient and the Hessian with central finite
        differences of the value and of the gradient.

        Raises
        ------
        ValueError
            if a relative discrepancy exceeds 1e-5.
        """
        rng = np.random.default_rng(seed)
        points = rng.uniform(0.1, 0.9, size=(n_points, 2))
        steps = FD_STEP * np.eye(2)
        grad = self.gradient(points)
        hess = self.hessian(points)
        fd_grad = np.stack([
            (self.value(points + step) - self.value(points - step)) /
            (2 * FD_STEP) for step in steps], axis=1)
        fd_dx, fd_dy = [
            (self.gradient(points + step) - self.gradient(points - step)) /
            (2 * FD_STEP) for step in steps]
        fd_hess = np.stack((fd_dx[:, 0], fd_dx[:, 1], fd_dy[:, 1]), axis=1)
        for label, exact, approx in (("gradient", grad, fd_grad),
                                     ("Hessian", hess, fd_hess)):
            scale = 1 + np.abs(exact).max()
            error = np.abs(exact - approx).max() / scale
            if error > FD_TOL:
                raise ValueError(
                    f"The {label} of {self.name} is inconsistent with its "
                    f"finite differences (relative error {error:.2e}).")


class PolynomialFunction(SmoothFunction):
    """ Bivariate polynomial sum_ij c[i, j] x^i y^j.
    """
    def __init__(self, coefficients, name="polynomial"):
        coefficients = np.atleast_2d(np.asarray(coefficients, dtype=float))
        self.coefficients = coefficients
        super(PolynomialFunction, self).__init__(
            value=self._poly_value, gradient=self._poly_gradient,
            hessian=self._poly_hessian, bilaplacian=self._poly_bilaplacian,
            name=name, check=False)

    @property
    def degree(self):
        """ Total degree of the polynomial.
        """
        i, j = np.nonzero(np.abs(self.coefficients) > 0)
        return int((i + j).max()) if len(i) > 0 else 0

    def deriv(self, dx=0, dy=0):
        coefficients = self.coefficients
        if dx > 0:
            coefficients = P.polyder(coefficients, m=dx, axis=0)
        if dy > 0:
            coefficients = P.polyder(coefficients, m=dy, axis=1)
        return PolynomialFunction(coefficients)

    def _eval(self, coefficients, points):
        return P.polyval2d(points[:, 0], points[:, 1], coefficients)

    def _poly_value(self, points):
        return self._eval(self.coefficients, points)

    def _poly_gradient(self, points):
        return np.stack([self.deriv(1, 0)._poly_value(points),
                         self.deriv(0, 1)._poly_value(points)], axis=1)

    def _poly_hessian(self, points):
        return np.stack([self.deriv(*orders)._poly_value(points)
                         for orders in ((2, 0), (1, 1), (0, 2))], axis=1)

    def _poly_bilaplacian(self, points):
        return (self.deriv(4, 0)._poly_value(points) +
                2 * self.deriv(2, 2)._poly_value(points) +
                self.deriv(0, 4)._poly_value(points))

    def __add__(self, other):
        shape = np.maximum(self.coefficients.shape, other.coefficients.shape)
        coefficients = np.zeros(shape)
        for item in (self, other):
            rows, cols = item.coefficients.shape
            coefficients[:rows, :cols] += item.coefficients
        return PolynomialFunction(coefficients)

    def __mul__(self, other):
        if isinstance(other, PolynomialFunction):
            return PolynomialFunction(
                convolve2d(self.coefficients, other.coefficients))
        return PolynomialFunction(other * self.coefficients)

    __rmul__ = __mul__


def monomial(dx, dy):
    """ The monomial x^dx y^dy.
    """
    coefficients = np.zeros((dx + 1, dy + 1))
    coefficients[dx, dy] = 1
    return PolynomialFunction(coefficients, name=f"x^{dx} y^{dy}")


def random_polynomial(rng, degree):
    """ Polynomial of total degree <= degree with standard normal
    coefficients.
    """
    coefficients = rng.standard_normal((degree + 1, degree + 1))
    i, j = np.indices(coefficients.shape)
    coefficients[i + j > degree] = 0
    return PolynomialFunction(coefficients, name=f"random P{degree}")


def cos_sin():
    """ u = -4 cos(x / 2) sin(y / 2), with bilaplacian u / 4.
    """
    def value(x):
        return -4 * np.cos(x[:, 0] / 2) * np.sin(x[:, 1] / 2)

    def gradient(x):
        c1, s1 = np.cos(x[:, 0] / 2), np.sin(x[:, 0] / 2)
        c2, s2 = np.cos(x[:, 1] / 2), np.sin(x[:, 1] / 2)
        return np.stack((2 * s1 * s2, -2 * c1 * c2), axis=1)

    def hessian(x):
        c1, s1 = np.cos(x[:, 0] / 2), np.sin(x[:, 0] / 2)
        c2, s2 = np.cos(x[:, 1] / 2), np.sin(x[:, 1] / 2)
        return np.stack((c1 * s2, s1 * c2, c1 * s2), axis=1)

    return SmoothFunction(value, gradient, hessian,
                          bilaplacian=lambda x: value(x) / 4, name="cos-sin")


def sin_cos():
    """ u = sin(x) cos(y), with bilaplacian 4 u.
    """
    def value(x):
        return np.sin(x[:, 0]) * np.cos(x[:, 1])

    def gradient(x):
        return np.stack((np.cos(x[:, 0]) * np.cos(x[:, 1]),
                         -np.sin(x[:, 0]) * np.sin(x[:, 1])), axis=1)

    def hessian(x):
        return np.stack((-np.sin(x[:, 0]) * np.cos(x[:, 1]),
                         -np.cos(x[:, 0]) * np.sin(x[:, 1]),
                         -np.sin(x[:, 0]) * np.cos(x[:, 1])), axis=1)

    return SmoothFunction(value, gradient, hessian,
                          bilaplacian=lambda x: 4 * value(x), name="sin-cos")


def trapezoid_solution():
    """ u = 1/4 (x^3 + 5 y^2 - 10 y^3 + y^4)^2.
    """
    coefficients = np.zeros((4, 5))
    coefficients[3, 0] = 1
    coefficients[0, 2:] = (5, -10, 1)
    inner = PolynomialFunction(coefficients)
    solution = 0.25 * (inner * inner)
    solution.name = "trapezoid"
    return solution


def homogeneous_solution():
    """ u = 200 (x y (1 - x) (1 - y))^2, vanishing with its gradient on the
    boundary of the unit square.
    """
    bump = np.convolve([0, 1, -1], [0, 1, -1])
    solution = PolynomialFunction(200 * np.outer(bump, bump))
    solution.name = "homogeneous"
    return solution


PROBLEMS = {
    "cos-sin": cos_sin,
    "sin-cos": sin_cos,
    "trapezoid": trapezoid_solution,
    "homogeneous": homogeneous_solution}


def get_problem(name):
    """ Build a registered manufactured solution.
    """
    if name not in PROBLEMS:
        raise ValueError(
            f"Unknown problem '{name}'. Available problems: "
            f"{', '.join(sorted(PROBLEMS))}.")
    return PROBLEMS[name]()
