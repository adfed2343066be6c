# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Definition of the workflows.
"""

from .convergence import run_convergence, convergence_table
from .tables import dump_tables
from .meshes import generate_mesh, mesh_sequence, parse_generator
from .cli import main
