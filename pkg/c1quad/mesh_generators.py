# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Built-in mesh generators.
"""

# Imports
import numpy as np
from .quad_mesh import QuadMesh


def _mesh_from_polygons(polygons):
    """ Build a mesh from a list of quads given by coordinates, merging
    coincident points.
    """
    index, vertices, quads = {}, [], []
    for polygon in polygons:
        quad = []
        for point in polygon:
            key = tuple(np.round(point, 12) + 0.)
            if key not in index:
                index[key] = len(vertices)
                vertices.append(point)
            quad.append(index[key])
        quads.append(quad)
    return QuadMesh(np.asarray(vertices, dtype=float), quads)


def unit_square_grid(n=1):
    """ Uniform n x n grid of squares covering [0, 1]^2.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"Grid size must be >= 1, got {n}.")
    coords = np.linspace(0, 1, n + 1)
    xx, yy = np.meshgrid(coords, coords, indexing="xy")
    vertices = np.stack((xx.ravel(), yy.ravel()), axis=1)
    quads = []
    for row in range(n):
        for col in range(n):
            v1 = row * (n + 1) + col
            quads.append((v1, v1 + 1, v1 + n + 2, v1 + n + 1))
    return QuadMesh(vertices, quads)


def l_shape():
    """ Three unit squares covering [0, 2]^2 minus [1, 2]^2.
    """
    vertices = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2),
                (1, 2)]
    quads = [(0, 1, 4, 3), (1, 2, 5, 4), (3, 4, 7, 6)]
    return QuadMesh(vertices, quads)


def trapezoid(level=0):
    """ Non-nested trapezoid mesh of [0, 1]^2.

    The square is split into 2^level x 2^level macro-squares of side H, each
    cut into four trapezoids by its vertical midline and by a straight line
    through its center joining the heights H/4 and 3H/4 of its vertical
    sides. The slant alternates between neighbouring columns, so that the
    elements never tend to parallelograms under refinement.
    """
    level = int(level)
    if level < 0:
        raise ValueError(f"Trapezoid level must be >= 0, got {level}.")
    n = 2 ** level
    size = 1. / n
    polygons = []
    for row in range(n):
        for col in range(n):
            x0, y0 = col * size, row * size
            left = y0 + size * (0.25 if col % 2 == 0 else 0.75)
            right = y0 + size * (0.75 if col % 2 == 0 else 0.25)
            xm, ym = x0 + size / 2, y0 + size / 2
            x1, y1 = x0 + size, y0 + size
            polygons.extend([
                [(x0, y0), (xm, y0), (xm, ym), (x0, left)],
                [(xm, y0), (x1, y0), (x1, right), (xm, ym)],
                [(xm, ym), (x1, right), (x1, y1), (xm, y1)],
                [(x0, left), (xm, ym), (xm, y1), (x0, y1)]])
    return _mesh_from_polygons(polygons)


def perturbed_grid(n=2, magnitude=0.1, seed=0):
    """ Grid of [0, 1]^2 whose interior vertices are moved by a seeded
    uniform perturbation of at most magnitude * h in each direction.
    """
    if magnitude < 0:
        raise ValueError(f"Perturbation must be >= 0, got {magnitude}.")
    grid = unit_square_grid(n)
    rng = np.random.default_rng(seed)
    shift = rng.uniform(-1, 1, size=grid.vertices.shape)
    shift[grid.boundary_vertices] = 0
    vertices = grid.vertices + magnitude * shift / n
    return QuadMesh(vertices, grid.quads)


def extraordinary_vertex(valence=5):
    """ Fan of quads around an interior vertex of the given valence, on a
    regular polygon with 2 * valence sides.
    """
    valence = int(valence)
    if valence < 3:
        raise ValueError(f"Valence must be >= 3, got {valence}.")
    angles = np.arange(2 * valence) * np.pi / valence
    vertices = np.concatenate((
        np.zeros((1, 2)), np.stack((np.cos(angles), np.sin(angles)), axis=1)))
    quads = []
    for idx in range(valence):
        quads.append((0, 1 + 2 * idx, 2 + 2 * idx,
                      1 + (2 * idx + 2) % (2 * valence)))
    return QuadMesh(vertices, quads)


def unstructured():
    """ Six quads covering [0, 1]^2 around two interior vertices: vertex
    10 at (0.55, 0.45) is shared by quads 0 to 4 (valence 5) and vertex 11
    at (0.3, 0.72) by quads 3 to 5 (valence 3). All other vertices lie on
    the boundary.
    """
    vertices = [
        (0., 0.), (0.5, 0.), (1., 0.), (1., 0.5), (1., 1.), (0.5, 1.),
        (0.25, 1.), (0., 1.), (0., 0.75), (0., 0.5), (0.55, 0.45),
        (0.3, 0.72)]
    quads = [
        (0, 1, 10, 9), (1, 2, 3, 10), (10, 3, 4, 5), (9, 10, 11, 8),
        (10, 5, 6, 11), (11, 6, 7, 8)]
    return QuadMesh(vertices, quads)


def holed_square(hole=0.4, layers=2):
    """ Square [-1, 1]^2 with the square hole (-hole, hole)^2 removed,
    meshed by concentric rings of eight trapezoids.

    Parameters
    ----------
    hole: float, default 0.4
        the half-width of the hole, in (0, 1).
    layers: int, default 2
        the number of rings between the hole and the outer boundary.

    Returns
    -------
    mesh: QuadMesh
        the mesh with 8 * layers quads and two boundary loops.
    """
    hole, layers = float(hole), int(layers)
    if not 0 < hole < 1:
        raise ValueError(f"Hole half-width must lie in (0, 1), got {hole}.")
    if layers < 1:
        raise ValueError(f"Number of layers must be >= 1, got {layers}.")
    directions = np.array([
        [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1],
        [1, -1]], dtype=float)
    sizes = hole + (1 - hole) * np.arange(layers + 1) / layers
    rings = sizes[:, None, None] * directions[None]
    polygons = []
    for layer in range(layers):
        for idx in range(8):
            nxt = (idx + 1) % 8
            polygons.append([
                rings[layer, idx], rings[layer + 1, idx],
                rings[layer + 1, nxt], rings[layer, nxt]])
    return _mesh_from_polygons(polygons)


def random_quad(rng, magnitude=0.2):
    """ Random strictly convex counter-clockwise quad: a perturbed unit
    square, randomly rotated, scaled and translated.

    Parameters
    ----------
    rng: numpy.random.Generator
        the random generator.
    magnitude: float, default 0.2
        the maximum corner perturbation of the unit square.

    Returns
    -------
    corners: array (4, 2)
        the quad vertices.
    """
    corners = np.array([[0., 0.], [1., 0.], [1., 1.], [0., 1.]])
    corners += rng.uniform(-magnitude, magnitude, size=(4, 2))
    angle = rng.uniform(0, 2 * np.pi)
    rotation = np.array([[np.cos(angle), -np.sin(angle)],
                         [np.sin(angle), np.cos(angle)]])
    scale = rng.uniform(0.5, 2.)
    return scale * corners @ rotation.T + rng.uniform(-1, 1, size=2)


def random_mesh(rng, n=2, magnitude=0.15):
    """ Randomly perturbed, rotated and scaled n x n grid.
    """
    grid = perturbed_grid(n, magnitude=magnitude,
                          seed=int(rng.integers(2 ** 31)))
    angle = rng.uniform(0, 2 * np.pi)
    rotation = np.array([[np.cos(angle), -np.sin(angle)],
                         [np.sin(angle), np.cos(angle)]])
    vertices = rng.uniform(0.5, 2.) * grid.vertices @ rotation.T
    return QuadMesh(vertices, grid.quads)


GENERATORS = {
    "unit-square-grid": unit_square_grid,
    "l-shape": l_shape,
    "trapezoid": trapezoid,
    "perturbed-grid": perturbed_grid,
    "extraordinary-vertex": extraordinary_vertex,
    "unstructured": unstructured,
    "holed-square": holed_square}

# generators rebuilt at each level instead of being refined
NON_NESTED = ("trapezoid", )


def generate(name, **params):
    """ Run a built-in generator by name.

    Parameters
    ----------
    name: str
        the generator name, one of GENERATORS.
    params: dict
        the generator parameters.

    Returns
    -------
    mesh: QuadMesh
        the generated mesh.
    """
    if name not in GENERATORS:
        raise ValueError(
            f"Unknown mesh generator '{name}'. Available generators: "
            f"{', '.join(sorted(GENERATORS))}.")
    return GENERATORS[name](**params)
