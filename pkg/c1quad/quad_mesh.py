# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Quadrilateral mesh representation, bilinear element maps, geometric
quantities, regular refinement and mesh file I/O.

Local conventions: the vertices of a quad are stored counter-clockwise,
local vertex i sits at the parametric corner CORNERS[i], and local edge i
joins local vertex i to local vertex i + 1 (modulo 4).
"""

# Imports
import json
import numpy as np


CORNERS = np.array([[0., 0.], [1., 0.], [1., 1.], [0., 1.]])
CONVEXITY_TOL = 1e-10
HANGING_TOL = 1e-12


def edge_parameters(local_edge, s):
    """ Parametric points of a local edge, s running from local vertex
    local_edge to local vertex local_edge + 1.

    Parameters
    ----------
    local_edge: int
        the local edge index in 0..3.
    s: array (M, )
        the edge parameters in [0, 1].

    Returns
    -------
    xi: array (M, 2)
        the points in the parameter square.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    start = CORNERS[local_edge]
    stop = CORNERS[(local_edge + 1) % 4]
    return start[None] + s[:, None] * (stop - start)[None]


def param_map(corners, xi):
    """ Bilinear map of the unit square onto a quad and its Jacobian.

    Parameters
    ----------
    corners: array (4, 2)
        the quad vertices v1..v4 in counter-clockwise order.
    xi: array (2, ) or (M, 2)
        points of the parameter square.

    Returns
    -------
    position: array (2, ) or (M, 2)
        the mapped points.
    jacobian: array (2, 2) or (M, 2, 2)
        the Jacobians, columns are d/dxi1 and d/dxi2.
    """
    corners = np.asarray(corners, dtype=float)
    xi = np.asarray(xi, dtype=float)
    single = (xi.ndim == 1)
    xi = np.atleast_2d(xi)
    x1, x2 = xi[:, 0, None], xi[:, 1, None]
    v1, v2, v3, v4 = corners
    position = ((1 - x1) * (1 - x2) * v1 + x1 * (1 - x2) * v2 +
                x1 * x2 * v3 + (1 - x1) * x2 * v4)
    t1, t2, t3, t4 = np.roll(corners, -1, axis=0) - corners
    jacobian = np.empty((len(xi), 2, 2))
    jacobian[:, :, 0] = t1[None] - x2 * (t1 + t3)[None]
    jacobian[:, :, 1] = -t4[None] + x1 * (t2 + t4)[None]
    if single:
        return position[0], jacobian[0]
    return position, jacobian


def corner_determinants(corners):
    """ The values a^(i) = det(t^(i-1), t^(i)) of the Jacobian determinant
    at the four vertices.
    """
    corners = np.asarray(corners, dtype=float)
    t_next = np.roll(corners, -1, axis=-2) - corners
    t_prev = corners - np.roll(corners, 1, axis=-2)
    return t_prev[..., 0] * t_next[..., 1] - t_prev[..., 1] * t_next[..., 0]


class QuadMesh(object):
    """ Conforming mesh of strictly convex counter-clockwise quads.

    The edges are derived from the quads: edge e joins edges[e, 0] < edges[e,
    1] and carries the global unit normal, the 90 degrees counter-clockwise
    rotation of the unit vector from its lower to its higher indexed
    endpoint.
    """
    def __init__(self, vertices, quads, validate=True):
        """ Init class.

        Parameters
        ----------
        vertices: array (V, 2)
            the vertex coordinates.
        quads: array (Q, 4)
            the counter-clockwise vertex indices of each quad.
        validate: bool, default True
            check orientation, convexity and conformity.
        """
        vertices = np.array(vertices, dtype=float)
        quads = np.array(quads, dtype=int)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise ValueError("Vertices must be an array of (x, y) pairs.")
        if quads.ndim != 2 or quads.shape[1] != 4 or len(quads) == 0:
            raise ValueError("Quads must be a non-empty array of quadruples.")
        vertices.setflags(write=False)
        quads.setflags(write=False)
        self.vertices = vertices
        self.quads = quads
        if validate:
            self._check_indices()
        self._build_edges()
        if validate:
            self.validate()

    def __repr__(self):
        return "QuadMesh(n_vertices={0}, n_edges={1}, n_quads={2})".format(
            self.n_vertices, self.n_edges, self.n_quads)

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_quads(self):
        return len(self.quads)

    def corners(self, quad):
        """ The (4, 2) vertex coordinates of a quad.
        """
        return self.vertices[self.quads[quad]]

    def _check_indices(self):
        if not np.all(np.isfinite(self.vertices)):
            raise ValueError("Vertex coordinates must be finite.")
        if self.quads.min() < 0 or self.quads.max() >= self.n_vertices:
            raise ValueError("Quad vertex index out of range.")
        for idx, quad in enumerate(self.quads):
            if len(set(quad)) != 4:
                raise ValueError(f"Quad {idx} has repeated vertices.")
        unused = np.setdiff1d(np.arange(self.n_vertices), self.quads)
        if len(unused) > 0:
            raise ValueError(
                f"Vertices {unused.tolist()} are not used by any quad.")

    def _build_edges(self):
        starts = self.quads
        stops = np.roll(self.quads, -1, axis=1)
        pairs = np.sort(np.stack((starts, stops), axis=-1), axis=-1)
        edges, inverse = np.unique(
            pairs.reshape(-1, 2), axis=0, return_inverse=True)
        self.edges = edges
        self.quad_edges = inverse.reshape(self.n_quads, 4)
        self.quad_edge_signs = np.where(starts < stops, 1, -1)
        self.edge_quads = -np.ones((len(edges), 2), dtype=int)
        self.edge_local = -np.ones((len(edges), 2), dtype=int)
        for quad in range(self.n_quads):
            for local in range(4):
                edge = self.quad_edges[quad, local]
                slot = np.flatnonzero(self.edge_quads[edge] < 0)
                if len(slot) == 0:
                    raise ValueError(
                        f"Edge {edges[edge].tolist()} is shared by more "
                        "than two quads.")
                self.edge_quads[edge, slot[0]] = quad
                self.edge_local[edge, slot[0]] = local
        lo, hi = self.vertices[edges[:, 0]], self.vertices[edges[:, 1]]
        tangents = hi - lo
        self.edge_lengths = np.linalg.norm(tangents, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            tangents = tangents / self.edge_lengths[:, None]
        self.edge_normals = np.stack((-tangents[:, 1], tangents[:, 0]), axis=1)
        self.edge_midpoints = 0.5 * (lo + hi)
        self.boundary_edges = self.edge_quads[:, 1] < 0
        self.boundary_vertices = np.zeros(self.n_vertices, dtype=bool)
        self.boundary_vertices[edges[self.boundary_edges].ravel()] = True
        self.valences = np.bincount(
            self.quads.ravel(), minlength=self.n_vertices)

    def validate(self):
        """ Check orientation, strict convexity and conformity.

        Raises
        ------
        ValueError
            on a clockwise or non-convex quad, an inconsistently oriented
            shared edge, or a hanging vertex.
        """
        h_quads = np.array([
            edge_lengths(self.corners(idx)).max()
            for idx in range(self.n_quads)])
        dets = corner_determinants(self.vertices[self.quads])
        for idx in range(self.n_quads):
            bad = np.flatnonzero(
                dets[idx] <= CONVEXITY_TOL * h_quads[idx] ** 2)
            if len(bad) > 0:
                raise ValueError(
                    f"Quad {idx} is non-CCW/non-convex: "
                    f"a^({bad[0] + 1}) = {dets[idx, bad[0]]:.3e}.")
        shared = ~self.boundary_edges
        sign_sum = np.zeros(self.n_edges, dtype=int)
        np.add.at(sign_sum, self.quad_edges.ravel(),
                  self.quad_edge_signs.ravel())
        inconsistent = np.flatnonzero(shared & (sign_sum != 0))
        if len(inconsistent) > 0:
            edge = self.edges[inconsistent[0]]
            raise ValueError(
                f"Edge {edge.tolist()} is traversed in the same direction "
                "by its two quads.")
        h = h_quads.max()
        for edge in np.flatnonzero(self.boundary_edges):
            lo, hi = self.vertices[self.edges[edge]]
            direction = hi - lo
            length2 = direction @ direction
            rel = self.vertices - lo[None]
            s = rel @ direction / length2
            dist = np.linalg.norm(rel - s[:, None] * direction[None], axis=1)
            inside = (s > 0) & (s < 1) & (dist < HANGING_TOL * h)
            inside[self.edges[edge]] = False
            if np.any(inside):
                raise ValueError(
                    f"Hanging vertex {np.flatnonzero(inside)[0]} on edge "
                    f"{self.edges[edge].tolist()}.")


def edge_lengths(corners):
    """ The four edge lengths ||t^(i)|| of a quad.
    """
    return np.linalg.norm(np.roll(corners, -1, axis=0) - corners, axis=1)


def edge_orientation_sign(mesh, quad, local_edge):
    """ Compare the inward normal of a quad edge with the global edge normal.

    Parameters
    ----------
    mesh: QuadMesh
        the mesh.
    quad: int
        the quad index.
    local_edge: int
        the local edge index in 0..3.

    Returns
    -------
    sign: int
        +1 if the inward normal equals the global normal, -1 otherwise.
    """
    return int(mesh.quad_edge_signs[quad, local_edge])


class MeshGeometry(object):
    """ Shape quantities of a mesh.

    Attributes
    ----------
    h_quads: array (Q, )
        the maximum edge length of each quad.
    rho_quads: array (Q, )
        the minimum angle (radians) over the four triangles made of two
        consecutive edges and a diagonal.
    min_dets: array (Q, )
        the minimum of det(grad F_Q), reached at a vertex.
    h, rho: float
        max(h_quads) and min(rho_quads).
    """
    def __init__(self, h_quads, rho_quads, min_dets):
        self.h_quads = h_quads
        self.rho_quads = rho_quads
        self.min_dets = min_dets
        self.h = float(h_quads.max())
        self.rho = float(rho_quads.min())


def _triangle_angles(a, b, c):
    angles = []
    for p0, p1, p2 in ((a, b, c), (b, c, a), (c, a, b)):
        u, v = p1 - p0, p2 - p0
        cos = u @ v / (np.linalg.norm(u) * np.linalg.norm(v))
        angles.append(np.arccos(np.clip(cos, -1, 1)))
    return angles


def geometry_report(mesh, n_samples=5):
    """ Compute h_Q and rho_Q for all quads and check the bilinear geometry
    bounds.

    Parameters
    ----------
    mesh: QuadMesh
        the mesh.
    n_samples: int, default 5
        size of the parametric sampling grid used to check that det(grad
        F_Q) is positive and minimal at a vertex.

    Returns
    -------
    geometry: MeshGeometry
        the per-quad and global shape quantities.
    """
    grid = np.linspace(0, 1, n_samples)
    xi = np.stack(np.meshgrid(grid, grid, indexing="ij"), axis=-1)
    xi = xi.reshape(-1, 2)
    h_quads, rho_quads, min_dets = [], [], []
    for idx in range(mesh.n_quads):
        corners = mesh.corners(idx)
        lengths = edge_lengths(corners)
        h_quad = lengths.max()
        angles = []
        for vtx in range(4):
            angles.extend(_triangle_angles(
                corners[vtx - 1], corners[vtx], corners[(vtx + 1) % 4]))
        rho_quad = min(angles)
        if rho_quad <= 0:
            raise ValueError(f"Quad {idx} is degenerate (rho_Q = 0).")
        dets = corner_determinants(corners)
        _, jac = param_map(corners, xi)
        sampled = np.linalg.det(jac)
        assert np.all(sampled > 0), f"non-positive Jacobian on quad {idx}."
        assert sampled.min() >= dets.min() * (1 - 1e-12), (
            f"Jacobian of quad {idx} not minimal at a vertex.")
        assert lengths.min() >= np.sin(rho_quad) ** 2 * h_quad * (
            1 - 1e-12), f"edge length bound violated on quad {idx}."
        h_quads.append(h_quad)
        rho_quads.append(rho_quad)
        min_dets.append(dets.min())
    return MeshGeometry(
        np.asarray(h_quads), np.asarray(rho_quads), np.asarray(min_dets))


def refine_regular(mesh):
    """ Split every quad into four through its edge midpoints and the image
    of the parametric center.

    Parameters
    ----------
    mesh: QuadMesh
        the mesh to refine.

    Returns
    -------
    refined: QuadMesh
        the refined mesh: old vertices first, then one vertex per edge, then
        one vertex per quad.
    """
    n_vertices, n_edges = mesh.n_vertices, mesh.n_edges
    centers = np.array([
        param_map(mesh.corners(idx), [0.5, 0.5])[0]
        for idx in range(mesh.n_quads)])
    vertices = np.concatenate(
        (mesh.vertices, mesh.edge_midpoints, centers), axis=0)
    quads = []
    for idx, quad in enumerate(mesh.quads):
        mid = n_vertices + mesh.quad_edges[idx]
        center = n_vertices + n_edges + idx
        v1, v2, v3, v4 = quad
        quads.extend([
            (v1, mid[0], center, mid[3]),
            (mid[0], v2, mid[1], center),
            (center, mid[1], v3, mid[2]),
            (mid[3], center, mid[2], v4)])
    return QuadMesh(vertices, quads)


def load_mesh(path):
    """ Load a mesh from a JSON file.

    Parameters
    ----------
    path: str
        a JSON file with a "vertices" array of [x, y] pairs and a "quads"
        array of counter-clockwise [i0, i1, i2, i3] quadruples.

    Returns
    -------
    mesh: QuadMesh
        the validated mesh.
    """
    try:
        with open(path, "rt") as open_file:
            data = json.load(open_file)
    except json.JSONDecodeError as err:
        raise ValueError(f"Cannot parse mesh file {path}: {err}.")
    if (not isinstance(data, dict) or "vertices" not in data or
            "quads" not in data):
        raise ValueError(
            f"Mesh file {path} must define 'vertices' and 'quads'.")
    return QuadMesh(data["vertices"], data["quads"])


def save_mesh(mesh, path):
    """ Save a mesh in the JSON format read by load_mesh.
    """
    data = {"vertices": mesh.vertices.tolist(),
            "quads": mesh.quads.tolist()}
    with open(path, "wt") as open_file:
        json.dump(data, open_file, indent=1)
    return path
