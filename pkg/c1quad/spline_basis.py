# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Univariate Bernstein polynomials and uniform B-spline spaces of degree p
and regularity r over [0, 1] split into k segments.
"""

# Imports
import numpy as np
from scipy.special import comb
from scipy.interpolate import BSpline
from scipy.linalg import lu_factor, lu_solve


MAX_DERIVATIVE = 2


class KnotVector(object):
    """ Open knot vector on [0, 1] together with a spline degree.

    The first and last knots are repeated p + 1 times, the interior knots
    i / k have multiplicity p - r. The associated B-splines form a partition
    of unity.
    """
    def __init__(self, knots, degree, segments=None, regularity=None):
        """ Init class.

        Parameters
        ----------
        knots: array (N, )
            the non-decreasing knot sequence.
        degree: int
            the spline degree p.
        segments: int, default None
            the number of polynomial segments k.
        regularity: int, default None
            the inner regularity r.
        """
        knots = np.array(knots, dtype=float)
        assert knots.ndim == 1, "knots must be a 1D sequence."
        assert np.all(np.diff(knots) >= 0), "knots should be increasing."
        assert len(knots) >= 2 * degree + 2, "not enough knots."
        knots.setflags(write=False)
        self.knots = knots
        self.degree = int(degree)
        self.segments = segments
        self.regularity = regularity
        self._basis = None

    def __repr__(self):
        return "KnotVector(p={0}, k={1}, r={2}, dim={3})".format(
            self.degree, self.segments, self.regularity, self.dimension)

    def __eq__(self, other):
        if not isinstance(other, KnotVector):
            return NotImplemented
        return (self.degree == other.degree and
                np.array_equal(self.knots, other.knots))

    def __hash__(self):
        return hash((self.degree, tuple(self.knots.tolist())))

    @property
    def dimension(self):
        """ Number of B-splines defined over this knot vector.
        """
        return len(self.knots) - self.degree - 1

    @property
    def breakpoints(self):
        """ The knots with duplicates removed.
        """
        return np.unique(self.knots)

    @property
    def spans(self):
        """ The (a, b) bounds of the non-empty knot spans.
        """
        breaks = self.breakpoints
        return np.stack((breaks[:-1], breaks[1:]), axis=1)

    def basis(self):
        """ All B-splines as one vector valued scipy spline.
        """
        if self._basis is None:
            self._basis = BSpline(
                self.knots, np.eye(self.dimension), self.degree)
        return self._basis


class BasisEval(object):
    """ Values and derivatives of a full univariate basis at one point.
    """
    def __init__(self, derivatives, tol=0.):
        """ Init class.

        Parameters
        ----------
        derivatives: list of array (n, )
            the basis values followed by the successive derivatives.
        tol: float, default 0
            values below this threshold define the inactive functions.
        """
        self.derivatives = [np.asarray(arr, dtype=float)
                            for arr in derivatives]
        self.indices = np.flatnonzero(np.abs(self.derivatives[0]) > tol)

    @property
    def order(self):
        return len(self.derivatives) - 1

    @property
    def values(self):
        return self.derivatives[0]

    @property
    def first(self):
        return self.derivatives[1] if self.order >= 1 else None

    @property
    def second(self):
        return self.derivatives[2] if self.order >= 2 else None

    def deriv(self, order):
        return self.derivatives[order]


def _check_order(order):
    if order < 0 or order > MAX_DERIVATIVE:
        raise ValueError(
            f"Derivative order must be in [0, {MAX_DERIVATIVE}], got "
            f"{order}.")


def bernstein_matrix(degree, points, order=0):
    """ Evaluate the order-th derivative of all Bernstein polynomials of a
    given degree.

    Parameters
    ----------
    degree: int
        the polynomial degree p.
    points: array (M, )
        the evaluation points in [0, 1].
    order: int, default 0
        the derivative order.

    Returns
    -------
    values: array (M, p + 1)
        the derivative values.
    """
    points = np.atleast_1d(np.asarray(points, dtype=float))
    values = np.zeros((len(points), degree + 1))
    low = degree - order
    if low < 0:
        return values
    idx = np.arange(low + 1)
    base = (comb(low, idx)[None] * points[:, None] ** idx[None] *
            (1 - points[:, None]) ** (low - idx)[None])
    factor = np.prod(np.arange(low + 1, degree + 1), dtype=float)
    for shift in range(order + 1):
        sign = (-1) ** (order - shift)
        values[:, shift: shift + low + 1] += (
            sign * comb(order, shift) * base)
    return factor * values


def bernstein_eval(degree, xi, order=0):
    """ Evaluate the Bernstein polynomials b_j(x) = C(p, j) x^j (1 - x)^(p-j)
    and their derivatives at one point.

    Parameters
    ----------
    degree: int
        the polynomial degree p.
    xi: float
        the evaluation point in [0, 1].
    order: int, default 0
        the highest derivative order, at most 2.

    Returns
    -------
    evaluation: BasisEval
        the p + 1 values and derivatives up to the requested order.
    """
    _check_order(order)
    if xi < 0 or xi > 1:
        raise ValueError(f"Evaluation point {xi} outside [0, 1].")
    return BasisEval([bernstein_matrix(degree, [xi], order=_o)[0]
                      for _o in range(order + 1)])


def make_knots(degree, segments, regularity):
    """ Build the uniform open knot vector of S^{p,r}_k.

    Parameters
    ----------
    degree: int
        the spline degree p.
    segments: int
        the number of polynomial segments k >= 1.
    regularity: int
        the inner regularity r, either p - 2 (double inner knots) or p - 1
        (single inner knots).

    Returns
    -------
    knots: KnotVector
        the knot vector, of dimension 2k + p - 1 when r = p - 2 and k + p
        when r = p - 1.
    """
    if segments < 1:
        raise ValueError(f"Number of segments must be >= 1, got {segments}.")
    if regularity not in (degree - 2, degree - 1) or regularity < 0:
        raise ValueError(
            f"Unsupported regularity r={regularity} for degree {degree}: "
            "expect p-2 or p-1.")
    mult = degree - regularity
    inner = np.repeat(np.arange(1, segments) / segments, mult)
    knots = np.concatenate((
        np.zeros(degree + 1), inner, np.ones(degree + 1)))
    return KnotVector(knots, degree, segments=segments, regularity=regularity)


def greville(knots):
    """ Compute the Greville abscissae (knot averages over p knots).

    Parameters
    ----------
    knots: KnotVector
        the knot vector.

    Returns
    -------
    abscissae: array (n, )
        one abscissa per basis function.
    """
    p = knots.degree
    kv = knots.knots
    if p == 0:
        return (kv[1:] + kv[:-1]) / 2
    abscissae = np.convolve(kv, np.ones(p) / p)[p:-p]
    return np.clip(abscissae, kv[0], kv[-1])


def basis_matrix(knots, points, order=0):
    """ Evaluate the order-th derivative of all B-splines at many points.

    Parameters
    ----------
    knots: KnotVector
        the knot vector.
    points: array (M, )
        the evaluation points in [0, 1].
    order: int, default 0
        the derivative order.

    Returns
    -------
    values: array (M, n)
        the collocation matrix of the derivative.
    """
    points = np.atleast_1d(np.asarray(points, dtype=float))
    if order > knots.degree:
        return np.zeros((len(points), knots.dimension))
    return knots.basis()(points, nu=order)


def bspline_eval(knots, xi, order=0):
    """ Cox-de Boor evaluation of all B-splines and their derivatives at
    one point.

    Parameters
    ----------
    knots: KnotVector
        the knot vector.
    xi: float
        the evaluation point in [0, 1].
    order: int, default 0
        the highest derivative order, at most 2.

    Returns
    -------
    evaluation: BasisEval
        the values and derivatives up to the requested order.
    """
    _check_order(order)
    if xi < 0 or xi > 1:
        raise ValueError(f"Evaluation point {xi} outside [0, 1].")
    return BasisEval([basis_matrix(knots, [xi], order=_o)[0]
                      for _o in range(order + 1)], tol=1e-15)


def collocation_solve(knots, values):
    """ Find the coefficients interpolating values given at the Greville
    abscissae.

    Parameters
    ----------
    knots: KnotVector
        the knot vector.
    values: array (n, ...)
        the values at the Greville abscissae.

    Returns
    -------
    coeffs: array (n, ...)
        the B-spline coefficients.
    """
    matrix = basis_matrix(knots, greville(knots))
    lu, piv = lu_factor(matrix)
    assert np.min(np.abs(np.diag(lu))) > 1e-12, (
        "singular Greville collocation matrix.")
    return lu_solve((lu, piv), values)


def dual_functionals(knots, func):
    """ Apply the dual functionals of the B-spline basis to a function.

    The functionals are realized by interpolation at the Greville
    abscissae, so that the spanned reconstruction reproduces func whenever
    it lies in the spline space.

    Parameters
    ----------
    knots: KnotVector
        the knot vector.
    func: callable
        a vectorized function of one variable.

    Returns
    -------
    coeffs: array (n, )
        the coefficients.
    """
    values = np.asarray(func(greville(knots)), dtype=float)
    return collocation_solve(knots, values)


def span(knots, coeffs, points, order=0):
    """ Evaluate the spline sum_i c_i b_i (or a derivative of it).
    """
    return basis_matrix(knots, points, order=order) @ np.asarray(coeffs)


def embedding_matrix(coarse, fine):
    """ Coefficients of the coarse B-splines in a finer spline space that
    contains them.

    Parameters
    ----------
    coarse: KnotVector
        the knot vector of the subspace.
    fine: KnotVector
        the knot vector of the enclosing space.

    Returns
    -------
    embedding: array (n_fine, n_coarse)
        column j holds the fine coefficients of the j-th coarse B-spline.
    """
    assert coarse.degree == fine.degree, "embedding requires equal degrees."
    values = basis_matrix(coarse, greville(fine))
    return collocation_solve(fine, values)
