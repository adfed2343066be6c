# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Quadrature rules, sampling grids, discrete error norms and convergence
rates.
"""

# Imports
import collections
import numpy as np
import pandas as pd
from numpy.polynomial.legendre import leggauss
from .quad_mesh import param_map


ErrorNorms = collections.namedtuple(
    "ErrorNorms", ["linf", "l2", "h1", "h2", "l2_rel", "h1_rel", "h2_rel"])


def gauss_points(knots, n_points):
    """ Tensor Gauss-Legendre rule on each polynomial piece of the parameter
    square.

    Parameters
    ----------
    knots: KnotVector
        the knot vector of both directions.
    n_points: int
        the number of nodes per direction and per knot span.

    Returns
    -------
    xi: array (M, 2)
        the parametric nodes.
    weights: array (M, )
        the weights, summing to 1.
    """
    nodes, weights = leggauss(n_points)
    points, scales = [], []
    for start, stop in knots.spans:
        points.append(start + (stop - start) * (nodes + 1) / 2)
        scales.append((stop - start) * weights / 2)
    points, scales = np.concatenate(points), np.concatenate(scales)
    xi = np.stack(np.meshgrid(points, points, indexing="ij"), axis=-1)
    return xi.reshape(-1, 2), np.outer(scales, scales).ravel()


def sample_points(knots, n_samples=10):
    """ Uniform n_samples x n_samples grid on each polynomial piece of the
    parameter square.
    """
    points = np.unique(np.concatenate([
        np.linspace(start, stop, n_samples) for start, stop in knots.spans]))
    xi = np.stack(np.meshgrid(points, points, indexing="ij"), axis=-1)
    return xi.reshape(-1, 2)


def quad_rule(corners, knots, n_points):
    """ Physical quadrature rule of a quad.

    Returns
    -------
    xi: array (M, 2)
        the parametric nodes.
    positions: array (M, 2)
        the physical nodes.
    weights: array (M, )
        the weights multiplied by det(grad F_Q).
    """
    xi, weights = gauss_points(knots, n_points)
    positions, jac = param_map(corners, xi)
    dets = np.linalg.det(jac)
    assert np.all(dets > 0), "non-positive Jacobian in quadrature."
    return xi, positions, weights * dets


def error_norms(space, coefficients, exact, n_points=None, n_samples=10):
    """ Compare a global function with an exact solution.

    Parameters
    ----------
    space: GlobalSpace
        the global space.
    coefficients: array (dim, )
        the global coefficient vector.
    exact: SmoothFunction
        the exact solution.
    n_points: int, default None
        the number of Gauss nodes per direction and per knot span, default
        p + 2.
    n_samples: int, default 10
        the number of samples per direction and per knot span used for the
        maximum norm.

    Returns
    -------
    errors: ErrorNorms
        the L-infinity error, the L2 error, the H1 and H2 seminorm errors
        and the three relative errors, NaN where the exact norm vanishes.
    """
    mesh = space.mesh
    n_points = n_points or space.degree + 2
    linf = 0.
    sums = np.zeros(3)
    norms = np.zeros(3)
    for quad in range(mesh.n_quads):
        corners = mesh.corners(quad)
        knots = space.bases[quad].knots
        xi, positions, weights = quad_rule(corners, knots, n_points)
        approx = space.evaluate(coefficients, quad, xi, order=2)
        values = exact.derivatives(positions, order=2)
        for target, data in ((sums, values - approx), (norms, values)):
            target[0] += weights @ data[0] ** 2
            target[1] += weights @ (data[1] ** 2 + data[2] ** 2)
            target[2] += weights @ (
                data[3] ** 2 + 2 * data[4] ** 2 + data[5] ** 2)
        xi = sample_points(knots, n_samples)
        positions, _ = param_map(corners, xi)
        approx = space.evaluate(coefficients, quad, xi, order=0)[0]
        linf = max(linf, np.abs(exact.value(positions) - approx).max())
    sums, norms = np.sqrt(sums), np.sqrt(norms)
    relative = np.full(3, np.nan)
    defined = norms > 0
    relative[defined] = sums[defined] / norms[defined]
    return ErrorNorms(float(linf), *sums.tolist(), *relative.tolist())


def convergence_rates(errors, h=None):
    """ Observed rates between consecutive levels.

    Parameters
    ----------
    errors: array (L, ) or pandas.DataFrame
        the errors per level, one column per norm for a DataFrame.
    h: array (L, ), default None
        the mesh sizes; rates are log(e_L / e_{L+1}) / log(h_L / h_{L+1})
        when given and log2(e_L / e_{L+1}) otherwise.

    Returns
    -------
    rates: array (L - 1, ) or pandas.DataFrame
        the rates, NaN-padded in the first row for a DataFrame.
    """
    if isinstance(errors, pd.DataFrame):
        rates = pd.DataFrame(index=errors.index)
        for column in errors.columns:
            rates[column] = np.concatenate((
                [np.nan], convergence_rates(errors[column].values, h=h)))
        return rates
    errors = np.asarray(errors, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.log(errors[:-1] / errors[1:])
        if h is None:
            return ratios / np.log(2)
        h = np.asarray(h, dtype=float)
        return ratios / np.log(h[:-1] / h[1:])
