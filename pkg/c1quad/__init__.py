# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Definition of the C1 quadrilateral finite elements and of the biharmonic
solver built on them.
"""

from .info import __version__
from .quad_mesh import QuadMesh, load_mesh, save_mesh, refine_regular
from .bs_element import build_basis
from .global_space import GlobalSpace, check_c1
from .interpolation import project_local, project_global
from .biharmonic import ProblemSpec, solve_problem
