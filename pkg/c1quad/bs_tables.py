# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Closed-form coefficient tables of the vertex and edge basis functions for
the degrees 3, 4 and 5.

All the patterns are given for vertex 1 in internal storage, i.e. entry
(j1, j2) is the coefficient of B_j1(xi1) B_j2(xi2), and are moved to
vertex k by the rotation R_k. Vertex and edge indices follow the modulo 4
convention of ElementGeometry.
"""

# Imports
import numpy as np


class TableScheme(object):
    """ Closed-form tables of one degree.

    Subclasses define the edge table, the left and bottom patterns (M^L,
    M^B), the corner pattern (X), the gradient patterns (Y) and the second
    derivative patterns (Z), together with the combination constants: the
    gradient prefactor c1, the gradient edge correction c2, the second
    derivative prefactor 1 / c3 and the second derivative edge correction
    1 / c4.
    """
    degree = None
    c1 = c2 = c3 = c4 = None

    @property
    def size(self):
        """ Size n of the square tables.
        """
        return 6 if self.degree == 5 else 11 - self.degree

    def fill(self, entries):
        """ Convert a {(j1, j2): value} pattern to an (n, n) array.
        """
        table = np.zeros((self.size, self.size))
        for (j1, j2), value in entries.items():
            table[j1, j2] += value
        return table

    def edge(self, geom, k):
        raise NotImplementedError

    def left(self, geom, k):
        raise NotImplementedError

    def bottom(self, geom, k):
        raise NotImplementedError

    def corner(self):
        raise NotImplementedError

    def gradient(self, geom, k, i):
        raise NotImplementedError

    def hessian(self, geom, k, i, j):
        raise NotImplementedError


class QuinticScheme(TableScheme):
    """ Polynomial element, p = 5, single segment.
    """
    degree = 5
    c1, c2, c3, c4 = 2 / 5, 5 / 16, 20., 32.

    def edge(self, geom, k):
        scale = 8 / (25 * geom.norm(k))
        return {(2, 1): scale * geom.a(k), (3, 1): scale * geom.a(k + 1)}

    def left(self, geom, k):
        b0, b1 = geom.b0(k - 1), geom.b1(k - 1)
        return {(0, 1): 1 / 2, (1, 1): 1 / 2, (0, 2): 1.,
                (1, 2): 1 + 3 / 5 * b1, (1, 3): -3 / 5 * b0}

    def bottom(self, geom, k):
        b0, b1 = geom.b0(k), geom.b1(k)
        return {(1, 0): 1 / 2, (2, 0): 1., (1, 1): 1 / 2,
                (2, 1): 1 + 3 / 5 * b0, (3, 1): -3 / 5 * b1}

    def corner(self):
        return {(0, 0): 1., (1, 0): 1 / 2, (0, 1): 1 / 2}

    def gradient(self, geom, k, i):
        return {(1, 2): -1 / 5 * geom.t(k - 2)[i],
                (1, 1): 1 / 10 * geom.q(k)[i],
                (2, 1): 1 / 5 * geom.t(k + 1)[i]}

    def hessian(self, geom, k, i, j):
        T = [geom.T(k - 1)[i, j], geom.T(k)[i, j]]
        Q = [geom.Q(k - 1)[i, j], geom.Q(k)[i, j], geom.Q(k + 1)[i, j]]
        return {(1, 2): 1 / 5 * Q[0],
                (0, 1): -1 / 2 * T[0],
                (1, 1): -2 / 5 * Q[1] - 1 / 2 * T[0] - 1 / 2 * T[1],
                (2, 1): 1 / 5 * Q[2],
                (1, 0): -1 / 2 * T[1]}


class QuarticScheme(TableScheme):
    """ Macro-element, p = 4, 2 x 2 segments with inner C2 lines.
    """
    degree = 4
    c1, c2, c3, c4 = 3 / 8, 1 / 4, 24., 48.

    def edge(self, geom, k):
        scale = 1 / (32 * geom.norm(k))
        a1, a2 = geom.a(k), geom.a(k + 1)
        return {(2, 1): scale * 2 * a1, (3, 1): scale * (3 * a1 + 3 * a2),
                (4, 1): scale * 2 * a2}

    def left(self, geom, k):
        b0, b1 = geom.b0(k - 1), geom.b1(k - 1)
        return {(0, 1): 1 / 3, (1, 1): 1 / 3, (0, 2): 2 / 3,
                (1, 2): 2 / 3 + b1 / 8, (0, 3): 1 / 2,
                (1, 3): 1 / 2 + 3 / 16 * (b1 - b0), (1, 4): -b0 / 8}

    def bottom(self, geom, k):
        b0, b1 = geom.b0(k), geom.b1(k)
        return {(1, 0): 1 / 3, (2, 0): 2 / 3, (3, 0): 1 / 2, (1, 1): 1 / 3,
                (2, 1): 2 / 3 + b0 / 8, (3, 1): 1 / 2 + 3 / 16 * (b0 - b1),
                (4, 1): -b1 / 8}

    def corner(self):
        return {(0, 0): 1., (1, 0): 2 / 3, (2, 0): 1 / 3, (0, 1): 2 / 3,
                (1, 1): 1 / 3, (2, 1): 1 / 3, (0, 2): 1 / 3, (1, 2): 1 / 3}

    def gradient(self, geom, k, i):
        prev, diag, post = geom.t(k - 2)[i], geom.q(k)[i], geom.t(k + 1)[i]
        return {(1, 3): -prev / 24,
                (1, 2): -prev / 4 - diag / 6,
                (1, 1): diag / 24,
                (2, 1): post / 4 - diag / 6,
                (3, 1): post / 24}

    def hessian(self, geom, k, i, j):
        T = [geom.T(k - 1)[i, j], geom.T(k)[i, j]]
        Q = [geom.Q(k - 1)[i, j], geom.Q(k)[i, j], geom.Q(k + 1)[i, j]]
        return {(1, 3): Q[0] / 32,
                (0, 2): -T[0] / 6,
                (1, 2): -T[0] / 6 - Q[1] / 8 + Q[0] / 16,
                (0, 1): -T[0] / 3,
                (1, 1): -T[0] / 3 - T[1] / 3 - 3 / 16 * Q[1],
                (2, 1): -Q[1] / 8 + Q[2] / 16 - T[1] / 6,
                (3, 1): Q[2] / 32,
                (1, 0): -T[1] / 3,
                (2, 0): -T[1] / 6}


class CubicScheme(TableScheme):
    """ Macro-element, p = 3, 3 x 3 segments with inner C1 lines.
    """
    degree = 3
    c1, c2, c3, c4 = 1 / 3, 1 / 8, 27., 96.

    def edge(self, geom, k):
        scale = 2 / (81 * geom.norm(k))
        a1, a2 = geom.a(k), geom.a(k + 1)
        return {(2, 1): scale * a1, (3, 1): scale * (3 * a1 + 2 * a2),
                (4, 1): scale * (2 * a1 + 3 * a2), (5, 1): scale * a2}

    def left(self, geom, k):
        b0, b1 = geom.b0(k - 1), geom.b1(k - 1)
        return {(0, 1): 1 / 3, (1, 1): 1 / 3, (0, 2): 2 / 3,
                (1, 2): 2 / 3 + b1 / 18, (0, 3): 2 / 3,
                (1, 3): 2 / 3 + b1 / 6 - b0 / 9, (0, 4): 1 / 3,
                (1, 4): 1 / 3 + b1 / 9 - b0 / 6, (1, 5): -b0 / 18}

    def bottom(self, geom, k):
        b0, b1 = geom.b0(k), geom.b1(k)
        return {(1, 0): 1 / 3, (2, 0): 2 / 3, (3, 0): 2 / 3, (4, 0): 1 / 3,
                (1, 1): 1 / 3, (2, 1): 2 / 3 + b0 / 18,
                (3, 1): 2 / 3 + b0 / 6 - b1 / 9,
                (4, 1): 1 / 3 + b0 / 9 - b1 / 6, (5, 1): -b1 / 18}

    def corner(self):
        return QuarticScheme().corner()

    def gradient(self, geom, k, i):
        prev, diag, post = geom.t(k - 2)[i], geom.q(k)[i], geom.t(k + 1)[i]
        return {(1, 3): -prev / 18 - diag / 54,
                (1, 2): -5 / 18 * prev - 11 / 54 * diag,
                (1, 1): diag / 27,
                (2, 1): 5 / 18 * post - 11 / 54 * diag,
                (3, 1): post / 18 - diag / 54}

    def hessian(self, geom, k, i, j):
        T = [geom.T(k - 1)[i, j], geom.T(k)[i, j]]
        Q = [geom.Q(k - 1)[i, j], geom.Q(k)[i, j], geom.Q(k + 1)[i, j]]
        return {(1, 3): -Q[1] / 72 + Q[0] / 36,
                (0, 2): -T[0] / 6,
                (1, 2): -T[0] / 6 - 11 / 72 * Q[1] + Q[0] / 18,
                (0, 1): -T[0] / 3,
                (1, 1): -T[0] / 3 - T[1] / 3 - Q[1] / 6,
                (2, 1): -11 / 72 * Q[1] + Q[2] / 18 - T[1] / 6,
                (3, 1): Q[2] / 36 - Q[1] / 72,
                (1, 0): -T[1] / 3,
                (2, 0): -T[1] / 6}


SCHEMES = {
    3: CubicScheme(),
    4: QuarticScheme(),
    5: QuinticScheme()}


def get_scheme(degree):
    """ Get the closed-form tables of a degree.
    """
    if degree not in SCHEMES:
        raise ValueError(
            f"No closed-form tables for degree {degree}: expect one of "
            f"{sorted(SCHEMES)}.")
    return SCHEMES[degree]
