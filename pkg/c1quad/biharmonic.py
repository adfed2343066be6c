# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Galerkin discretization of the clamped biharmonic problem
Delta^2 u = g in the domain, u = g1 and du/dn = g2 on its boundary.
"""

# Imports
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu
from joblib import Parallel, delayed
from tqdm import tqdm
from .bs_element import eval_basis
from .functions import SmoothFunction
from .interpolation import project_global
from .stat_utils import quad_rule, error_norms
from .color_utils import print_text


WEAK_FORMS = ("laplacian", "hessian")


class ProblemSpec(object):
    """ Data of a clamped biharmonic problem.

    Parameters
    ----------
    load: callable
        the right-hand side g of (M, 2) points.
    boundary: SmoothFunction
        an extension of the Dirichlet data g1 with gradient and Hessian,
        needed to form the C2 data at boundary vertices.
    boundary_normal: callable, default None
        g2(points, normals), the derivative of u along the given unit
        normals; default to the gradient of boundary.
    weak_form: str, default 'laplacian'
        'laplacian' for int Delta u Delta v, 'hessian' for int D2u : D2v.
    solution: SmoothFunction, default None
        the exact solution when known.
    """
    def __init__(self, load, boundary, boundary_normal=None,
                 weak_form="laplacian", solution=None):
        if weak_form not in WEAK_FORMS:
            raise ValueError(
                f"Unknown weak form '{weak_form}': expect one of "
                f"{', '.join(WEAK_FORMS)}.")
        if not isinstance(boundary, SmoothFunction):
            raise ValueError(
                "Boundary data without derivative information: the C2 data "
                "at the boundary vertices cannot be formed.")
        self.load = load
        self.boundary = boundary
        self.boundary_normal = boundary_normal
        self.weak_form = weak_form
        self.solution = solution

    def __repr__(self):
        name = self.solution.name if self.solution is not None else "raw"
        return f"ProblemSpec({name}, weak_form={self.weak_form})"

    @classmethod
    def from_solution(cls, solution, weak_form="laplacian"):
        """ Manufactured problem: g = Delta^2 u, g1 = u, g2 = du/dn.
        """
        if not solution.has_bilaplacian:
            raise ValueError(
                f"Manufactured solution {solution.name} has no bilaplacian.")
        return cls(solution.bilaplacian, solution, weak_form=weak_form,
                   solution=solution)


class LinearSystem(object):
    """ Assembled system with its Dirichlet constraints.

    Attributes
    ----------
    matrix: scipy.sparse.csr_matrix (dim, dim)
        the symmetric stiffness matrix.
    rhs: array (dim, )
        the load vector.
    constrained: array (C, )
        the constrained global indices.
    values: array (C, )
        the prescribed values.
    """
    def __init__(self, matrix, rhs, constrained, values):
        self.matrix = matrix
        self.rhs = rhs
        self.constrained = np.asarray(constrained, dtype=int)
        self.values = np.asarray(values, dtype=float)

    def __repr__(self):
        return "LinearSystem(dim={0}, n_free={1})".format(
            self.dimension, len(self.free))

    @property
    def dimension(self):
        return len(self.rhs)

    @property
    def free(self):
        return np.setdiff1d(np.arange(self.dimension), self.constrained)

    def residual(self, coefficients):
        """ Relative residual ||A x - b|| / ||b|| on the free unknowns.
        """
        free = self.free
        residual = (self.matrix @ coefficients - self.rhs)[free]
        scale = np.linalg.norm(self.rhs[free])
        return float(np.linalg.norm(residual) / (scale if scale > 0 else 1.))

    def symmetry_defect(self):
        """ max |A - A^T| / max |A|.
        """
        diff = abs(self.matrix - self.matrix.T).max()
        return float(diff / abs(self.matrix).max())


def element_system(basis, signs, load, weak_form, n_points):
    """ Element stiffness matrix and load vector in the signed local basis.
    """
    xi, positions, weights = quad_rule(basis.corners, basis.knots, n_points)
    values = eval_basis(basis, xi, order=2) * signs[None, None]
    if weak_form == "laplacian":
        laplacian = values[3] + values[5]
        stiffness = laplacian.T @ (weights[:, None] * laplacian)
    else:
        stiffness = sum(
            factor * values[idx].T @ (weights[:, None] * values[idx])
            for idx, factor in ((3, 1.), (4, 2.), (5, 1.)))
    rhs = values[0].T @ (weights * load(positions))
    return stiffness, rhs


def impose_dirichlet(space, boundary, boundary_normal=None):
    """ Values of the boundary-anchored degrees of freedom.

    Parameters
    ----------
    space: GlobalSpace
        the global space.
    boundary: SmoothFunction
        the Dirichlet data g1, with its derivatives.
    boundary_normal: callable, default None
        g2(points, normals); default to the gradient of boundary.

    Returns
    -------
    indices: array (C, )
        the constrained global indices: C2 data of the boundary vertices and
        edge data of the boundary edges.
    values: array (C, )
        the prescribed values.
    """
    if not isinstance(boundary, SmoothFunction):
        raise ValueError(
            "Boundary data without derivative information: the C2 data at "
            "the boundary vertices cannot be formed.")
    data = _BoundaryData(boundary, boundary_normal)
    indices = space.boundary_dofs()
    return indices, project_global(space, data)[indices]


class _BoundaryData(SmoothFunction):
    """ Dirichlet data whose normal derivative functionals use g2.
    """
    def __init__(self, boundary, boundary_normal=None):
        self.boundary_normal = boundary_normal
        super(_BoundaryData, self).__init__(
            boundary.value, boundary.gradient, boundary.hessian,
            name=boundary.name, check=False)

    def normal_derivative(self, points, normals):
        if self.boundary_normal is None:
            return super(_BoundaryData, self).normal_derivative(
                points, normals)
        return self.boundary_normal(points, normals)


def assemble(space, problem, n_points=None, n_jobs=1, verbose=False):
    """ Assemble the Galerkin system with its Dirichlet constraints.

    Parameters
    ----------
    space: GlobalSpace
        the global space.
    problem: ProblemSpec
        the problem data.
    n_points: int, default None
        the number of Gauss nodes per direction and per knot span, default
        p + 2.
    n_jobs: int, default 1
        the number of joblib workers computing the element systems.
    verbose: bool, default False
        display a progress bar.

    Returns
    -------
    system: LinearSystem
        the stiffness matrix, load vector and constraints.
    """
    n_points = n_points or space.degree + 2
    dofs = space.dofs
    quads = range(space.mesh.n_quads)
    if verbose:
        quads = tqdm(quads, desc="assemble")
    tasks = (delayed(element_system)(
        space.bases[quad], dofs.signs[quad], problem.load, problem.weak_form,
        n_points) for quad in quads)
    if n_jobs == 1:
        elements = [func(*args, **kwargs) for func, args, kwargs in tasks]
    else:
        elements = Parallel(n_jobs=n_jobs)(tasks)
    n_local = dofs.indices.shape[1]
    rows = np.repeat(dofs.indices, n_local, axis=1).ravel()
    cols = np.tile(dofs.indices, (1, n_local)).ravel()
    data = np.concatenate([stiffness.ravel() for stiffness, _ in elements])
    matrix = sp.coo_matrix(
        (data, (rows, cols)), shape=(dofs.dimension, dofs.dimension)).tocsr()
    rhs = np.zeros(dofs.dimension)
    for quad, (_, local_rhs) in enumerate(elements):
        np.add.at(rhs, dofs.indices[quad], local_rhs)
    constrained, values = impose_dirichlet(
        space, problem.boundary, problem.boundary_normal)
    return LinearSystem(matrix, rhs, constrained, values)


def _extended_residual(matrix, rhs, solution):
    """ rhs - matrix @ solution accumulated in extended precision.
    """
    coo = matrix.tocoo()
    product = np.zeros(coo.shape[0], dtype=np.longdouble)
    np.add.at(product, coo.row, coo.data.astype(np.longdouble) *
              np.asarray(solution, dtype=np.longdouble)[coo.col])
    return np.asarray(rhs, dtype=np.longdouble) - product


def solve(system, n_refine=4, verbose=False):
    """ Eliminate the constraints and solve the free unknowns by a sparse
    symmetric factorization.

    The reduced matrix is scaled symmetrically by D = diag(A)^-1/2 so that
    value, gradient and Hessian unknowns share the same magnitude. The
    scaled matrix is factored without pivoting and the solution is
    improved by a few steps of iterative refinement with residuals
    accumulated in extended precision.

    Parameters
    ----------
    system: LinearSystem
        the assembled system.
    n_refine: int, default 4
        the maximum number of refinement steps.
    verbose: bool, default False
        print the relative residual.

    Returns
    -------
    coefficients: array (dim, )
        the solution.

    Raises
    ------
    numpy.linalg.LinAlgError
        if the reduced matrix is singular or indefinite.
    """
    coefficients = np.zeros(system.dimension)
    coefficients[system.constrained] = system.values
    free = system.free
    if len(free) == 0:
        return coefficients
    matrix = system.matrix.tocsr()
    reduced = matrix[free][:, free].tocsc()
    diagonal = reduced.diagonal()
    if np.any(diagonal <= 0):
        raise np.linalg.LinAlgError(
            "Indefinite reduced stiffness matrix: non positive diagonal "
            "entries, check the assembly and the constraints.")
    scale = 1. / np.sqrt(diagonal)
    scaling = sp.diags(scale)
    scaled = (scaling @ reduced @ scaling).tocsc()
    try:
        factor = splu(scaled, permc_spec="MMD_AT_PLUS_A",
                      diag_pivot_thresh=0., options={"SymmetricMode": True})
    except RuntimeError as err:
        raise np.linalg.LinAlgError(
            f"Singular reduced stiffness matrix: {err}.")
    if np.any(factor.U.diagonal() <= 0):
        raise np.linalg.LinAlgError(
            "Indefinite reduced stiffness matrix: check the assembly and "
            "the constraints.")
    rhs = _extended_residual(matrix[free], system.rhs[free], coefficients)
    solution = scale * factor.solve(scale * rhs.astype(float))
    for _ in range(n_refine):
        residual = _extended_residual(reduced, rhs, solution)
        correction = scale * factor.solve(scale * residual.astype(float))
        solution = solution + correction
        if (np.linalg.norm(correction) <=
                np.finfo(float).eps * np.linalg.norm(solution)):
            break
    coefficients[free] = solution
    if verbose:
        print_text(f"relative residual: {system.residual(coefficients):.3e}")
    return coefficients


def galerkin_residual(system, coefficients, tests):
    """ Galerkin orthogonality defects of a solution.

    Parameters
    ----------
    system: LinearSystem
        the assembled system.
    coefficients: array (dim, )
        the discrete solution.
    tests: array (T, dim)
        test coefficient vectors, restricted to the free unknowns.

    Returns
    -------
    defects: array (T, )
        |v . (A u - b)| / (||v|| (||A u|| + ||b||)) for each test v.
    """
    free = system.free
    tests = np.atleast_2d(tests)[:, free]
    product = system.matrix @ coefficients
    residual = (product - system.rhs)[free]
    scale = (np.linalg.norm(product[free]) + np.linalg.norm(system.rhs[free]))
    return np.abs(tests @ residual) / (np.linalg.norm(tests, axis=1) * scale)


def solve_problem(space, problem, n_points=None, n_jobs=1, verbose=False):
    """ Assemble and solve.

    Returns
    -------
    coefficients: array (dim, )
        the discrete solution.
    system: LinearSystem
        the assembled system.
    """
    system = assemble(space, problem, n_points=n_points, n_jobs=n_jobs,
                      verbose=verbose)
    return solve(system, verbose=verbose), system


__all__ = ["WEAK_FORMS", "ProblemSpec", "LinearSystem", "assemble",
           "impose_dirichlet", "solve", "galerkin_residual", "error_norms",
           "solve_problem"]
