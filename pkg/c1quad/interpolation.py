# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Local and global projectors: apply the degrees of freedom to a smooth
function.
"""

# Imports
import numpy as np
from scipy.linalg import lu_factor, lu_solve
from .quad_mesh import CORNERS, param_map, edge_parameters
from .bs_element import normal_parameters, trace_parameters
from .bs_element import face_parameters, eval_basis, ElementGeometry
from .spline_basis import basis_matrix, make_knots
from .stat_utils import error_norms


def _face_points(theta):
    xi = np.stack(np.meshgrid(theta, theta, indexing="ij"), axis=-1)
    return xi.reshape(-1, 2)


def project_local(basis, func):
    """ Local projector: the values of the local functionals at a function.

    Parameters
    ----------
    basis: LocalBasis
        the local basis of a quad.
    func: SmoothFunction
        the function, smooth on the closed quad.

    Returns
    -------
    coefficients: array (N, )
        the coefficients of the projection in the local basis.
    """
    corners = basis.corners
    geom = ElementGeometry(corners)
    positions, _ = param_map(corners, CORNERS)
    values = [func.derivatives(positions, order=2).T.ravel()]
    normals = normal_parameters(basis.degree, basis.segments)
    traces = trace_parameters(basis.degree, basis.segments)
    for edge in range(4):
        points, _ = param_map(corners, edge_parameters(edge, normals))
        values.append(func.normal_derivative(points, geom.normals[edge]))
        if len(traces) > 0:
            points, _ = param_map(corners, edge_parameters(edge, traces))
            values.append(func.value(points))
    theta = _face_points(face_parameters(basis.knots))
    points, _ = param_map(corners, theta)
    face_values = func.value(points)
    coefficients = np.concatenate(values)
    if basis.convention == "point":
        return np.concatenate((coefficients, face_values))
    # change of functionals: remove the vertex and edge part, then invert
    # the interior collocation
    n_others = len(coefficients)
    others = eval_basis(basis, theta, order=0)[0][:, :n_others]
    inner = np.arange(2, basis.size - 2)
    collocation = basis_matrix(basis.knots, face_parameters(basis.knots))
    collocation = collocation[:, inner]
    change = np.kron(collocation, collocation)
    faces = lu_solve(lu_factor(change), face_values - others @ coefficients)
    return np.concatenate((coefficients, faces))


def project_global(space, func):
    """ Global projector: the values of the global functionals at a
    function.

    Parameters
    ----------
    space: GlobalSpace
        the global space.
    func: SmoothFunction
        the function, smooth on the closed domain.

    Returns
    -------
    coefficients: array (dim, )
        the global coefficient vector; its restriction to each quad equals
        the local projection.
    """
    mesh, dofs = space.mesh, space.dofs
    coefficients = np.empty(dofs.dimension)
    coefficients[:dofs.edge_offset] = func.derivatives(
        mesh.vertices, order=2).T.ravel()
    normals = normal_parameters(space.degree, space.segments)
    traces = trace_parameters(space.degree, space.segments)
    lo = mesh.vertices[mesh.edges[:, 0]]
    hi = mesh.vertices[mesh.edges[:, 1]]
    for edge in range(mesh.n_edges):
        start = dofs.edge_offset + dofs.per_edge * edge
        points = lo[edge] + normals[:, None] * (hi[edge] - lo[edge])
        coefficients[start: start + len(normals)] = (
            func.normal_derivative(points, mesh.edge_normals[edge]))
        if len(traces) > 0:
            points = lo[edge] + traces[:, None] * (hi[edge] - lo[edge])
            coefficients[start + len(normals): start + dofs.per_edge] = (
                func.value(points))
    theta = _face_points(face_parameters(
        make_knots(space.degree, space.segments, space.degree - 2)))
    for quad in range(mesh.n_quads):
        start = dofs.face_offset + dofs.n_faces * quad
        points, _ = param_map(mesh.corners(quad), theta)
        coefficients[start: start + dofs.n_faces] = func.value(points)
    return coefficients


def local_error(basis, func, n_samples=10):
    """ Maximum error of the local projection sampled on the quad.
    """
    grid = np.linspace(0, 1, n_samples * basis.segments + 1)
    xi = _face_points(grid)
    approx = eval_basis(basis, xi, order=0)[0] @ project_local(basis, func)
    points, _ = param_map(basis.corners, xi)
    return float(np.abs(func.value(points) - approx).max())


def interpolation_errors(space, func, n_points=None, n_samples=10):
    """ Error norms of the global projection of a function.

    Returns
    -------
    coefficients: array (dim, )
        the projection.
    errors: ErrorNorms
        the error norms, see stat_utils.error_norms.
    """
    coefficients = project_global(space, func)
    return coefficients, error_norms(
        space, coefficients, func, n_points=n_points, n_samples=n_samples)
