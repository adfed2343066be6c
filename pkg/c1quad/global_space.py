# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Global C1 space on a quad mesh: enumeration of the degrees of freedom,
local-to-global maps with edge orientation signs, evaluation of global
functions and smoothness checks.

The global numbering is grouped by blocks: 6 consecutive degrees of
freedom per vertex (value, dx, dy, dxx, dxy, dyy), then the degrees of
freedom of each edge (normal derivative points then trace points, ordered
from the lower to the higher indexed endpoint), then the face points of
each quad.
"""

# Imports
import collections
import numpy as np
from joblib import Parallel, delayed
from .quad_mesh import CORNERS, edge_parameters
from .bs_element import VERTEX_KINDS, FACE_KIND
from .bs_element import check_degree, local_counts, local_dof_labels
from .bs_element import normal_parameters, trace_parameters
from .bs_element import build_basis, eval_basis


Dof = collections.namedtuple("Dof", ["kind", "anchor", "index"])
C1Report = collections.namedtuple(
    "C1Report", ["value_jump", "gradient_jump", "hessian_jump"])


def expected_dimension(mesh, degree, segments=None):
    """ dim V = (2k + p - 5)^2 |Q| + (2k + 2p - 11) |E| + 6 |V|.
    """
    degree, segments = check_degree(degree, segments)
    n_normals, n_traces, n_faces = local_counts(degree, segments)
    return (n_faces * mesh.n_quads + (n_normals + n_traces) * mesh.n_edges +
            6 * mesh.n_vertices)


class DofSet(object):
    """ Global degrees of freedom of V^p(M) and the local-to-global maps.

    Attributes
    ----------
    labels: list of Dof
        the (kind, anchor, index) of each global degree of freedom; the
        anchor is a vertex, edge or quad index.
    indices: array (Q, N)
        the global index of each local basis function of each quad.
    signs: array (Q, N)
        +1 or -1; -1 only for edge normal couplings whose inward normal
        opposes the global edge normal.
    """
    def __init__(self, mesh, degree, segments=None):
        degree, segments = check_degree(degree, segments)
        self.mesh = mesh
        self.degree = degree
        self.segments = segments
        self.n_normals, self.n_traces, self.n_faces = local_counts(
            degree, segments)
        self.per_edge = self.n_normals + self.n_traces
        for params in (normal_parameters(degree, segments),
                       trace_parameters(degree, segments)):
            assert np.allclose(params, 1 - params[::-1], atol=1e-14), (
                "edge anchors are not symmetric: neighbouring quads would "
                "induce different points on a shared edge.")
        self.edge_offset = 6 * mesh.n_vertices
        self.face_offset = self.edge_offset + self.per_edge * mesh.n_edges
        self.dimension = self.face_offset + self.n_faces * mesh.n_quads
        self.labels = self._make_labels()
        self.indices, self.signs = self._make_maps()
        self.indices.setflags(write=False)
        self.signs.setflags(write=False)

    def __len__(self):
        return self.dimension

    def __repr__(self):
        return "DofSet(p={0}, k={1}, dim={2})".format(
            self.degree, self.segments, self.dimension)

    def _make_labels(self):
        labels = []
        for vertex in range(self.mesh.n_vertices):
            labels.extend(Dof(kind, vertex, idx)
                          for idx, kind in enumerate(VERTEX_KINDS))
        for edge in range(self.mesh.n_edges):
            labels.extend(Dof("EdgeNormal", edge, idx)
                          for idx in range(self.n_normals))
            labels.extend(Dof("EdgePoint", edge, idx)
                          for idx in range(self.n_traces))
        side = int(round(np.sqrt(self.n_faces)))
        for quad in range(self.mesh.n_quads):
            labels.extend(Dof(FACE_KIND, quad, (2 + idx // side,
                                                2 + idx % side))
                          for idx in range(self.n_faces))
        assert len(labels) == self.dimension, "inconsistent numbering."
        return labels

    def _make_maps(self):
        mesh = self.mesh
        n_local = len(local_dof_labels(self.degree, self.segments))
        indices = np.empty((mesh.n_quads, n_local), dtype=int)
        signs = np.ones((mesh.n_quads, n_local), dtype=int)
        normals = np.arange(self.n_normals)
        traces = self.n_normals + np.arange(self.n_traces)
        for quad in range(mesh.n_quads):
            row = [6 * vertex + np.arange(6) for vertex in mesh.quads[quad]]
            sign_row = [np.ones(24, dtype=int)]
            for local in range(4):
                start = self.edge_offset + (
                    self.per_edge * mesh.quad_edges[quad, local])
                sign = mesh.quad_edge_signs[quad, local]
                if sign > 0:
                    row.append(start + np.concatenate((normals, traces)))
                else:
                    row.append(start + np.concatenate(
                        (normals[::-1], traces[::-1])))
                sign_row.append(np.concatenate((
                    np.full(self.n_normals, sign),
                    np.ones(self.n_traces, dtype=int))))
            row.append(self.face_offset + self.n_faces * quad +
                       np.arange(self.n_faces))
            sign_row.append(np.ones(self.n_faces, dtype=int))
            indices[quad] = np.concatenate(row)
            signs[quad] = np.concatenate(sign_row)
        return indices, signs

    def boundary_dofs(self):
        """ Global indices of the degrees of freedom anchored on the
        boundary: all vertex data of boundary vertices and all edge data of
        boundary edges.
        """
        mesh = self.mesh
        vertices = np.flatnonzero(mesh.boundary_vertices)
        edges = np.flatnonzero(mesh.boundary_edges)
        blocks = [(6 * vertices[:, None] + np.arange(6)[None]).ravel(),
                  (self.edge_offset + self.per_edge * edges[:, None] +
                   np.arange(self.per_edge)[None]).ravel()]
        return np.sort(np.concatenate(blocks)).astype(int)


def enumerate_dofs(mesh, degree, segments=None):
    """ Enumerate the global degrees of freedom.

    Parameters
    ----------
    mesh: QuadMesh
        the mesh.
    degree: int
        the degree p.
    segments: int, default None
        the number of segments k, default max(1, 6 - p).

    Returns
    -------
    dofs: DofSet
        the global numbering.
    """
    return DofSet(mesh, degree, segments)


def local_to_global(mesh, dofs, quad):
    """ Local-to-global row of a quad.

    Parameters
    ----------
    mesh: QuadMesh
        the mesh.
    dofs: DofSet
        the global numbering of this mesh.
    quad: int
        the quad index.

    Returns
    -------
    indices: array (N, )
        the global index of each local basis function.
    signs: array (N, )
        the orientation sign of each coupling.
    """
    assert dofs.mesh is mesh, "degrees of freedom built on another mesh."
    return dofs.indices[quad], dofs.signs[quad]


class GlobalSpace(object):
    """ The global C1 space: mesh, numbering and per-quad local bases dual to
    the point-evaluation face functionals.
    """
    def __init__(self, mesh, degree, segments=None, builder="explicit",
                 n_jobs=1):
        """ Init class.

        Parameters
        ----------
        mesh: QuadMesh
            the mesh.
        degree: int
            the degree p.
        segments: int, default None
            the number of segments k, default max(1, 6 - p).
        builder: str, default 'explicit'
            the local basis builder, 'explicit' or 'numeric'.
        n_jobs: int, default 1
            the number of joblib workers used to build the local bases.
        """
        self.mesh = mesh
        self.dofs = enumerate_dofs(mesh, degree, segments)
        self.degree = self.dofs.degree
        self.segments = self.dofs.segments
        self.builder = builder
        self.n_jobs = n_jobs
        self._bases = None

    def __repr__(self):
        return "GlobalSpace(p={0}, k={1}, dim={2}, n_quads={3})".format(
            self.degree, self.segments, self.dimension, self.mesh.n_quads)

    @property
    def dimension(self):
        return self.dofs.dimension

    @property
    def bases(self):
        """ The local bases, built on first access.
        """
        if self._bases is None:
            tasks = (delayed(build_basis)(
                self.mesh.corners(quad), self.degree, self.segments,
                builder=self.builder, convention="point")
                for quad in range(self.mesh.n_quads))
            if self.n_jobs == 1:
                self._bases = [func(*args, **kwargs)
                               for func, args, kwargs in tasks]
            else:
                self._bases = Parallel(n_jobs=self.n_jobs)(tasks)
        return self._bases

    def local_coefficients(self, coefficients, quad):
        """ Coefficients of the local basis of a quad for a global vector.
        """
        indices, signs = local_to_global(self.mesh, self.dofs, quad)
        return signs * np.asarray(coefficients)[indices]

    def evaluate(self, coefficients, quad, xi, order=2):
        """ Evaluate a global function on a quad.

        Parameters
        ----------
        coefficients: array (dim, )
            the global coefficient vector.
        quad: int
            the quad index.
        xi: array (2, ) or (M, 2)
            the parametric points.
        order: int, default 2
            the highest derivative order.

        Returns
        -------
        values: array (1, 3 or 6, M)
            the value, dx, dy, dxx, dxy and dyy at the mapped points.
        """
        values = eval_basis(self.bases[quad], xi, order=order)
        return values @ self.local_coefficients(coefficients, quad)

    def boundary_dofs(self):
        return self.dofs.boundary_dofs()


def check_c1(space, coefficients, n_samples=20):
    """ Measure the smoothness defects of a global function.

    Parameters
    ----------
    space: GlobalSpace
        the global space.
    coefficients: array (dim, )
        the global coefficient vector.
    n_samples: int, default 20
        the number of sample points per interior edge.

    Returns
    -------
    report: C1Report
        the maximum absolute jump of the value and of the gradient across
        interior edges, and the maximum disagreement of the Hessians of the
        incident quads at the vertices.
    """
    mesh = space.mesh
    params = np.linspace(0, 1, n_samples)
    value_jump = gradient_jump = hessian_jump = 0.
    for edge in np.flatnonzero(~mesh.boundary_edges):
        sides = []
        for quad, local in zip(mesh.edge_quads[edge], mesh.edge_local[edge]):
            sign = mesh.quad_edge_signs[quad, local]
            xi = edge_parameters(local, params if sign > 0 else 1 - params)
            sides.append(space.evaluate(coefficients, quad, xi, order=1))
        jump = np.abs(sides[0] - sides[1])
        value_jump = max(value_jump, jump[0].max())
        gradient_jump = max(gradient_jump, jump[1:].max())
    hessians = collections.defaultdict(list)
    for quad, vertices in enumerate(mesh.quads):
        values = space.evaluate(coefficients, quad, CORNERS, order=2)
        for local, vertex in enumerate(vertices):
            hessians[vertex].append(values[3:, local])
    for items in hessians.values():
        items = np.asarray(items)
        hessian_jump = max(hessian_jump, np.abs(items - items[0]).max())
    return C1Report(float(value_jump), float(gradient_jump),
                    float(hessian_jump))
