# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Local C1 quadrilateral element: geometry coefficients, local degrees of
freedom, closed-form and numeric basis builders, and physical-space
evaluation.

A local function is stored as an (n, n) table of tensor-product B-spline
coefficients of S^{p,p-2}_k x S^{p,p-2}_k, entry (i1, i2) multiplying
B_i1(xi1) B_i2(xi2). The local degrees of freedom are ordered vertex-major
(value, dx, dy, dxx, dxy, dyy at each vertex), then edge by edge (normal
derivative points first, then trace points, both by increasing local
edge parameter), then face by face (i1 outer, i2 inner).
"""

# Imports
import collections
import numpy as np
from scipy.linalg import null_space, lu_factor, lu_solve
from .quad_mesh import CORNERS, param_map, edge_parameters, edge_lengths
from .quad_mesh import corner_determinants
from .spline_basis import make_knots, greville, basis_matrix
from .spline_basis import embedding_matrix
from .bs_tables import get_scheme


VERTEX_KINDS = ("VertexValue", "VertexDx", "VertexDy", "VertexDxx",
                "VertexDxy", "VertexDyy")
EDGE_KINDS = ("EdgeNormal", "EdgePoint")
FACE_KIND = "FacePoint"
CONVENTIONS = ("dual", "point")
N_DERIVATIVES = {0: 1, 1: 3, 2: 6}
LocalDof = collections.namedtuple("LocalDof", ["kind", "anchor", "index"])


def default_segments(degree):
    """ Number of segments per parametric direction of the BS element.
    """
    return max(1, 6 - degree)


def check_degree(degree, segments):
    """ Check a (degree, segments) pair and fill the default segments.
    """
    if degree < 3:
        raise ValueError(f"Degree must be >= 3, got {degree}.")
    if segments is None:
        segments = default_segments(degree)
    if segments < default_segments(degree):
        raise ValueError(
            f"Degree {degree} requires at least {default_segments(degree)} "
            f"segments, got {segments}.")
    return int(degree), int(segments)


def local_counts(degree, segments):
    """ Number of normal-derivative points, trace points and face points
    per edge or face.
    """
    n_normals = segments + degree - 5
    n_traces = segments + degree - 6
    n_faces = (2 * segments + degree - 5) ** 2
    return n_normals, n_traces, n_faces


def local_dimension(degree, segments=None):
    """ Dimension of the local space: 24 + 4 (2k + 2p - 11) + (2k + p - 5)^2.
    """
    degree, segments = check_degree(degree, segments)
    n_normals, n_traces, n_faces = local_counts(degree, segments)
    return 24 + 4 * (n_normals + n_traces) + n_faces


def local_dof_labels(degree, segments=None):
    """ Labels of the local degrees of freedom in basis order.

    Returns
    -------
    labels: list of LocalDof
        the (kind, anchor, index) triplets: anchor is the local vertex or
        edge index and None for faces, index is the point index along the
        edge or the (i1, i2) coefficient index of a face.
    """
    degree, segments = check_degree(degree, segments)
    n_normals, n_traces, _ = local_counts(degree, segments)
    size = 2 * segments + degree - 1
    labels = []
    for vertex in range(4):
        labels.extend(LocalDof(kind, vertex, idx)
                      for idx, kind in enumerate(VERTEX_KINDS))
    for edge in range(4):
        labels.extend(LocalDof("EdgeNormal", edge, idx)
                      for idx in range(n_normals))
        labels.extend(LocalDof("EdgePoint", edge, idx)
                      for idx in range(n_traces))
    for i1 in range(2, size - 2):
        for i2 in range(2, size - 2):
            labels.append(LocalDof(FACE_KIND, None, (i1, i2)))
    return labels


def normal_parameters(degree, segments):
    """ Edge parameters of the normal-derivative degrees of freedom.
    """
    n_normals, _, _ = local_counts(degree, segments)
    abscissae = greville(make_knots(degree - 1, segments, degree - 2))
    return abscissae[2: 2 + n_normals]


def trace_parameters(degree, segments):
    """ Edge parameters of the trace degrees of freedom.
    """
    _, n_traces, _ = local_counts(degree, segments)
    abscissae = greville(make_knots(degree, segments, degree - 1))
    return abscissae[3: 3 + n_traces]


def face_parameters(knots):
    """ Greville abscissae of the interior B-splines of one direction.
    """
    return greville(knots)[2: knots.dimension - 2]


class ElementGeometry(object):
    """ Precomputed coefficients of a quad.

    Accessors take the vertex or edge index k in 1..4 and wrap it modulo 4,
    so that t(0) is t(4). Edge k goes from vertex k to vertex k + 1.
    """
    def __init__(self, corners):
        corners = np.asarray(corners, dtype=float)
        self.corners = corners
        self.edges = np.roll(corners, -1, axis=0) - corners
        self.lengths = edge_lengths(corners)
        self.dets = corner_determinants(corners)
        self.normals = np.stack(
            (-self.edges[:, 1], self.edges[:, 0]), axis=1) / (
            self.lengths[:, None])
        self.diagonals = np.array([
            sum((-1) ** shift * corners[(idx + shift) % 4]
                for shift in range(4))
            for idx in range(4)])
        self.twist = self.diagonals[0]

    def t(self, k):
        """ Edge vector t^(k) = v_{k+1} - v_k.
        """
        return self.edges[(k - 1) % 4]

    def norm(self, k):
        return self.lengths[(k - 1) % 4]

    def a(self, k):
        """ Jacobian determinant a^(k) = det(t^(k-1), t^(k)) at vertex k.
        """
        return self.dets[(k - 1) % 4]

    def n(self, k):
        """ Inward unit normal of edge k.
        """
        return self.normals[(k - 1) % 4]

    def q(self, k):
        """ q^(k) = v_k - v_{k+1} + v_{k+2} - v_{k+3}.
        """
        return self.diagonals[(k - 1) % 4]

    def b0(self, k):
        return self.t(k - 1) @ self.t(k) / self.norm(k) ** 2

    def b1(self, k):
        return self.t(k + 1) @ self.t(k) / self.norm(k) ** 2

    def T(self, k):
        return np.outer(self.t(k), self.t(k))

    def Q(self, k):
        outer = np.outer(self.t(k - 1), self.t(k))
        return outer + outer.T

    def N(self, k):
        outer = np.outer(self.n(k), self.t(k))
        return outer + outer.T


def element_geometry(corners):
    """ Compute the precomputable coefficients of a quad.

    Parameters
    ----------
    corners: array (4, 2)
        the counter-clockwise quad vertices.

    Returns
    -------
    geom: ElementGeometry
        the edge vectors, determinants, normals and derived tensors.
    """
    return ElementGeometry(corners)


class CoeffTable(object):
    """ Coefficient table of a local function.

    The internal array is indexed (i1, i2) with i2 counted from the bottom
    edge. The display orientation prints the row of highest xi2 index
    first, with xi1 growing from left to right.
    """
    def __init__(self, coefficients):
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.ndim != 2 or (
                coefficients.shape[0] != coefficients.shape[1]):
            raise ValueError(
                f"Coefficient tables must be square, got shape "
                f"{coefficients.shape}.")
        self.coefficients = coefficients

    def __repr__(self):
        return f"CoeffTable(size={self.size})"

    @property
    def size(self):
        return len(self.coefficients)

    @classmethod
    def from_display(cls, display):
        """ Build a table from its printed orientation.
        """
        return cls(np.asarray(display, dtype=float)[::-1].T)

    def display(self):
        """ The table in printed orientation.
        """
        return self.coefficients.T[::-1]

    def rotate(self, k):
        return rotate_table(self, k)


def rotate_table(table, k):
    """ Apply the rotation R_k, the (k - 1) x 90 degrees counter-clockwise
    rotation of the parameter square that moves corner (0, 0) to the corner
    of vertex k.

    Parameters
    ----------
    table: CoeffTable or array (n, n)
        the table to rotate.
    k: int
        the vertex index, R_1 is the identity.

    Returns
    -------
    rotated: CoeffTable or array (n, n)
        the rotated table, same type as the input.
    """
    if isinstance(table, CoeffTable):
        return CoeffTable(rotate_table(table.coefficients, k))
    table = np.asarray(table)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValueError(
            f"Cannot rotate a non-square table of shape {table.shape}.")
    return np.rot90(table, (k - 1) % 4)


def edge_indices(size, edge):
    """ Flat indices of the boundary coefficients of a local edge, by
    increasing edge parameter.
    """
    idx = np.arange(size)
    rows, cols = {
        0: (idx, np.zeros(size, dtype=int)),
        1: (np.full(size, size - 1), idx),
        2: (idx[::-1], np.full(size, size - 1)),
        3: (np.zeros(size, dtype=int), idx[::-1])}[edge]
    return rows * size + cols


def tensor_derivatives(knots, xi, order=2):
    """ Parametric derivatives of all tensor-product B-splines.

    Parameters
    ----------
    knots: KnotVector
        the knot vector of both directions.
    xi: array (M, 2)
        the parametric points.
    order: int, default 2
        the highest derivative order.

    Returns
    -------
    derivs: array (1, 3 or 6, M, n * n)
        the value, d1, d2, d11, d12 and d22 parametric derivatives, in
        the first axis up to the requested order.
    """
    xi = np.atleast_2d(xi)
    first = [basis_matrix(knots, xi[:, 0], order=_o)
             for _o in range(order + 1)]
    second = [basis_matrix(knots, xi[:, 1], order=_o)
              for _o in range(order + 1)]
    pairs = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    derivs = [np.einsum("ma,mb->mab", first[o1], second[o2]).reshape(
        len(xi), -1) for o1, o2 in pairs[:N_DERIVATIVES[order]]]
    return np.stack(derivs)


def push_forward(derivs, jacobians, twist):
    """ Turn parametric derivatives into physical derivatives through the
    bilinear map.

    Parameters
    ----------
    derivs: array (1, 3 or 6, M, ...)
        the parametric value, gradient and Hessian entries.
    jacobians: array (M, 2, 2)
        the Jacobians of the map at the M points.
    twist: array (2, )
        the only nonzero second derivative of the map, v1 - v2 + v3 - v4.

    Returns
    -------
    phys: array (1, 3 or 6, M, ...)
        the value, dx, dy, dxx, dxy and dyy.
    """
    if len(derivs) == 1:
        return derivs
    inv = np.linalg.inv(jacobians)
    grad = np.einsum("mac,am...->cm...", inv, derivs[1:3])
    phys = [derivs[0], grad[0], grad[1]]
    if len(derivs) == 6:
        correction = np.einsum("c,cm...->m...", twist, grad)
        hess = np.empty((2, 2) + derivs.shape[1:])
        hess[0, 0] = derivs[3]
        hess[0, 1] = hess[1, 0] = derivs[4] - correction
        hess[1, 1] = derivs[5]
        hess = np.einsum("mac,abm...,mbd->cdm...", inv, hess, inv)
        phys.extend([hess[0, 0], hess[0, 1], hess[1, 1]])
    return np.stack(phys)


def physical_rows(corners, knots, xi, order=2):
    """ Physical derivatives of all tensor-product B-splines at parametric
    points: array (1, 3 or 6, M, n * n).
    """
    xi = np.atleast_2d(xi)
    _, jac = param_map(corners, xi)
    derivs = tensor_derivatives(knots, xi, order=order)
    twist = corners[0] - corners[1] + corners[2] - corners[3]
    return push_forward(derivs, jac, twist)


def element_functionals(corners, degree, segments=None, convention="dual"):
    """ Rows of the local functionals acting on tensor-product coefficients.

    Parameters
    ----------
    corners: array (4, 2)
        the quad vertices.
    degree: int
        the degree p.
    segments: int, default None
        the number of segments k, default max(1, 6 - p).
    convention: str, default 'dual'
        'dual' extracts the interior coefficients, 'point' evaluates at the
        mapped Greville face points.

    Returns
    -------
    functionals: array (N, n * n)
        one row per local degree of freedom, in basis order.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"Unknown functional convention '{convention}'.")
    degree, segments = check_degree(degree, segments)
    corners = np.asarray(corners, dtype=float)
    knots = make_knots(degree, segments, degree - 2)
    size = knots.dimension
    geom = ElementGeometry(corners)
    rows = []
    vertex_rows = physical_rows(corners, knots, CORNERS)
    for vertex in range(4):
        rows.extend(vertex_rows[:, vertex])
    normals = normal_parameters(degree, segments)
    traces = trace_parameters(degree, segments)
    for edge in range(4):
        if len(normals) > 0:
            grad = physical_rows(
                corners, knots, edge_parameters(edge, normals), order=1)
            rows.extend(np.einsum("c,cmf->mf", geom.normals[edge], grad[1:]))
        if len(traces) > 0:
            rows.extend(physical_rows(
                corners, knots, edge_parameters(edge, traces), order=0)[0])
    inner = np.arange(2, size - 2)
    if convention == "dual":
        face_rows = np.zeros((len(inner) ** 2, size * size))
        flat = (inner[:, None] * size + inner[None]).ravel()
        face_rows[np.arange(len(flat)), flat] = 1
    else:
        theta = face_parameters(knots)
        xi = np.stack(np.meshgrid(theta, theta, indexing="ij"), axis=-1)
        face_rows = physical_rows(
            corners, knots, xi.reshape(-1, 2), order=0)[0]
    rows.extend(face_rows)
    return np.asarray(rows)


def membership_constraints(corners, knots):
    """ Linear constraints on the tensor-product coefficients whose kernel is
    the local space.

    On each edge the trace must lie in S^{p,p-1}_k (k - 1 rows) and the
    normal derivative, multiplied by the Jacobian determinant, must lie in
    det x P^{p-1} on each of the k segments (k rows).
    """
    degree, segments = knots.degree, knots.segments
    size = knots.dimension
    geom = ElementGeometry(corners)
    smooth = make_knots(degree, segments, degree - 1)
    trace_rows = null_space(embedding_matrix(smooth, knots).T).T
    assert len(trace_rows) == segments - 1, "unexpected trace codimension."
    rows = []
    for edge in range(4):
        idx = edge_indices(size, edge)
        for trace_row in trace_rows:
            row = np.zeros(size * size)
            row[idx] = trace_row
            rows.append(row)
        for start, stop in knots.spans:
            samples = np.linspace(start, stop, degree + 1)
            xi = edge_parameters(edge, samples)
            _, jac = param_map(corners, xi)
            dets = np.linalg.det(jac)
            local = (samples - start) / (stop - start)
            weights = dets[:, None] * local[:, None] ** np.arange(degree)
            annihilator = null_space(weights.T)
            assert annihilator.shape[1] == 1, "unexpected annihilator size."
            grad = physical_rows(corners, knots, xi, order=1)[1:]
            normal = np.einsum("c,cmf->mf", geom.normals[edge], grad)
            rows.append((annihilator[:, 0] * dets) @ normal)
    return np.asarray(rows)


class LocalBasis(object):
    """ Basis of the local space of a quad, dual to its local functionals.

    Attributes
    ----------
    degree, segments: int
        the degree p and the number of segments k.
    knots: KnotVector
        the knot vector of S^{p,p-2}_k, shared by both directions.
    corners: array (4, 2)
        the quad vertices.
    coefficients: array (N, n, n)
        the internal coefficient table of each basis function.
    convention: str
        the face functional convention, 'dual' or 'point'.
    labels: list of LocalDof
        the degree of freedom each function is dual to.
    """
    def __init__(self, degree, segments, corners, coefficients,
                 convention="dual"):
        self.degree = degree
        self.segments = segments
        self.knots = make_knots(degree, segments, degree - 2)
        self.corners = np.asarray(corners, dtype=float)
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.convention = convention
        self.labels = local_dof_labels(degree, segments)
        assert len(self.coefficients) == len(self.labels), (
            "number of basis functions and degrees of freedom differ.")
        self.coefficients.setflags(write=False)

    def __len__(self):
        return len(self.coefficients)

    def __repr__(self):
        return "LocalBasis(p={0}, k={1}, size={2}, convention={3})".format(
            self.degree, self.segments, len(self), self.convention)

    @property
    def size(self):
        return self.knots.dimension

    @property
    def matrix(self):
        """ The (n * n, N) coefficient matrix, one column per function.
        """
        return self.coefficients.reshape(len(self), -1).T

    def table(self, index):
        return CoeffTable(self.coefficients[index])

    def grouped(self):
        """ Function indices grouped by vertex, edge and face.
        """
        groups = collections.OrderedDict(
            (("vertex", []), ("edge", []), ("face", [])))
        for idx, label in enumerate(self.labels):
            if label.kind in VERTEX_KINDS:
                groups["vertex"].append(idx)
            elif label.kind in EDGE_KINDS:
                groups["edge"].append(idx)
            else:
                groups["face"].append(idx)
        return groups


def build_basis_explicit(corners, degree):
    """ Build the local basis from the closed-form coefficient tables.

    Parameters
    ----------
    corners: array (4, 2)
        the quad vertices.
    degree: int
        the degree p in {3, 4, 5}, with the default number of segments.

    Returns
    -------
    basis: LocalBasis
        the basis dual to the local functionals, 'dual' face convention.
    """
    scheme = get_scheme(degree)
    segments = default_segments(degree)
    geom = element_geometry(corners)
    edge_tables = [rotate_table(scheme.fill(scheme.edge(geom, k)), k)
                   for k in range(1, 5)]

    def edge_table(k):
        return edge_tables[(k - 1) % 4]

    tables = []
    for k in range(1, 5):
        left = scheme.fill(scheme.left(geom, k))
        bottom = scheme.fill(scheme.bottom(geom, k))
        tables.append(rotate_table(
            left + bottom + scheme.fill(scheme.corner()), k))
        prev, this = geom.t(k - 1), geom.t(k)
        for i in range(2):
            pattern = (-prev[i] * left + this[i] * bottom +
                       scheme.fill(scheme.gradient(geom, k, i)))
            tables.append(
                scheme.c1 * rotate_table(pattern, k) -
                scheme.c2 * geom.n(k)[i] * edge_table(k) -
                scheme.c2 * geom.n(k - 1)[i] * edge_table(k - 1))
        for i, j in ((0, 0), (0, 1), (1, 1)):
            weight = 2. - (i == j)
            pattern = (geom.T(k - 1)[i, j] * left +
                       geom.T(k)[i, j] * bottom +
                       scheme.fill(scheme.hessian(geom, k, i, j)))
            tables.append(
                weight / scheme.c3 * rotate_table(pattern, k) -
                weight / scheme.c4 * geom.N(k)[i, j] * edge_table(k) +
                weight / scheme.c4 * geom.N(k - 1)[i, j] * edge_table(k - 1))
    tables.extend(edge_tables)
    size = scheme.size
    for i1 in range(2, size - 2):
        for i2 in range(2, size - 2):
            table = np.zeros((size, size))
            table[i1, i2] = 1
            tables.append(table)
    return LocalBasis(degree, segments, corners, np.asarray(tables))


def build_basis_numeric(corners, degree, segments=None, convention="dual"):
    """ Build the local basis by solving the duality system on the kernel of
    the membership constraints.

    Parameters
    ----------
    corners: array (4, 2)
        the quad vertices.
    degree: int
        the degree p >= 3.
    segments: int, default None
        the number of segments k >= max(1, 6 - p), default max(1, 6 - p).
    convention: str, default 'dual'
        the face functional convention.

    Returns
    -------
    basis: LocalBasis
        the basis dual to the local functionals.

    Raises
    ------
    numpy.linalg.LinAlgError
        if the duality system is singular.
    """
    degree, segments = check_degree(degree, segments)
    corners = np.asarray(corners, dtype=float)
    knots = make_knots(degree, segments, degree - 2)
    size = knots.dimension
    kernel = null_space(membership_constraints(corners, knots))
    expected = local_dimension(degree, segments)
    assert kernel.shape[1] == expected, (
        f"local space has dimension {kernel.shape[1]}, expected {expected}.")
    gram = element_functionals(
        corners, degree, segments, convention=convention) @ kernel
    lu, piv = lu_factor(gram)
    pivots = np.abs(np.diag(lu))
    if pivots.min() < 1e-13 * pivots.max():
        raise np.linalg.LinAlgError(
            "Singular local duality system: invalid quad or inconsistent "
            "degrees of freedom.")
    coefficients = kernel @ lu_solve((lu, piv), np.eye(expected))
    return LocalBasis(degree, segments, corners,
                      coefficients.T.reshape(expected, size, size),
                      convention=convention)


def to_point_evaluation(basis):
    """ Convert a basis dual to interior coefficient extraction into the
    basis dual to face point evaluations.

    Parameters
    ----------
    basis: LocalBasis
        a basis with the 'dual' face convention.

    Returns
    -------
    converted: LocalBasis
        the basis with the 'point' face convention.
    """
    if basis.convention == "point":
        return basis
    knots, size = basis.knots, basis.size
    theta = face_parameters(knots)
    inner = np.arange(2, size - 2)
    collocation = basis_matrix(knots, theta)[:, inner]
    change = np.kron(collocation, collocation)
    faces = np.array(basis.grouped()["face"], dtype=int)
    others = np.setdiff1d(np.arange(len(basis)), faces)
    xi = np.stack(np.meshgrid(theta, theta, indexing="ij"), axis=-1)
    values = eval_basis(basis, xi.reshape(-1, 2), order=0)[0]
    lu_piv = lu_factor(change)
    face_tables = basis.coefficients[faces]
    coefficients = np.array(basis.coefficients)
    correction = lu_solve(lu_piv, values[:, others])
    coefficients[others] -= np.einsum("jf,jab->fab", correction, face_tables)
    coefficients[faces] = np.einsum(
        "jf,jab->fab", lu_solve(lu_piv, np.eye(len(faces))), face_tables)
    return LocalBasis(basis.degree, basis.segments, basis.corners,
                      coefficients, convention="point")


def eval_basis(basis, xi, order=2):
    """ Evaluate all local basis functions in physical space.

    Parameters
    ----------
    basis: LocalBasis
        the local basis.
    xi: array (2, ) or (M, 2)
        the parametric points.
    order: int, default 2
        the highest derivative order.

    Returns
    -------
    values: array (1, 3 or 6, M, N)
        the value, dx, dy, dxx, dxy and dyy of every function, in the first
        axis up to the requested order.
    """
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    if np.any(xi < -1e-14) or np.any(xi > 1 + 1e-14):
        raise ValueError("Evaluation points must lie in the unit square.")
    rows = physical_rows(basis.corners, basis.knots, xi, order=order)
    return rows @ basis.matrix


def apply_functionals(basis):
    """ Apply all local functionals to all basis functions: the identity
    matrix up to round-off.
    """
    functionals = element_functionals(
        basis.corners, basis.degree, basis.segments,
        convention=basis.convention)
    return functionals @ basis.matrix


def build_basis(corners, degree, segments=None, builder="explicit",
                convention="point"):
    """ Build a local basis with the closed-form tables when available.

    Parameters
    ----------
    corners: array (4, 2)
        the quad vertices.
    degree: int
        the degree p.
    segments: int, default None
        the number of segments k.
    builder: str, default 'explicit'
        'explicit' falls back on the numeric builder outside p in {3, 4, 5}
        with the default segments, 'numeric' always solves.
    convention: str, default 'point'
        the face functional convention.

    Returns
    -------
    basis: LocalBasis
        the local basis.
    """
    if builder not in ("explicit", "numeric"):
        raise ValueError(f"Unknown basis builder '{builder}'.")
    degree, segments = check_degree(degree, segments)
    if (builder == "explicit" and degree in (3, 4, 5) and
            segments == default_segments(degree)):
        basis = build_basis_explicit(corners, degree)
    else:
        basis = build_basis_numeric(corners, degree, segments)
    if convention == "point":
        basis = to_point_evaluation(basis)
    return basis
