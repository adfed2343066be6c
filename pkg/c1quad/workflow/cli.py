# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Define the command-line entry point.
"""

# Imports
import numpy as np
from c1quad.config import ConfigParser, RunConfig
from c1quad.workflow.convergence import run_convergence
from c1quad.workflow.tables import dump_tables as _dump_tables, UNIT_SQUARE
from c1quad.workflow.meshes import generate_mesh
from c1quad.color_utils import print_error


def main(degree=None, segments=None, levels=None, mesh=None, generate=None,
         problem=None, weak_form=None, out="c1quad_results",
         dump_tables=False, save_mesh=False, seed=None, config=None,
         name=None, mode=None, quad=UNIT_SQUARE, builder=None, n_jobs=None):
    """ Run a convergence study, dump coefficient tables or generate a mesh.

    Parameters
    ----------
    degree: int, default 5
        the degree p >= 3.
    segments: int or 'auto', default 'auto'
        the number of segments k, 'auto' for max(1, 6 - p).
    levels: int, default 3
        the finest refinement level.
    mesh: str, default None
        a mesh JSON file.
    generate: str, default 'unstructured'
        a built-in generator 'name[:params]': unit-square-grid, l-shape,
        trapezoid, perturbed-grid, extraordinary-vertex, unstructured or
        holed-square.
    problem: str, default 'cos-sin'
        the manufactured solution: cos-sin, sin-cos, trapezoid or
        homogeneous.
    weak_form: str, default 'laplacian'
        the bilinear form, 'laplacian' or 'hessian'.
    out: str, default 'c1quad_results'
        the destination folder.
    dump_tables: bool, default False
        dump the coefficient tables of the quad instead of solving.
    save_mesh: bool, default False
        save the generated mesh instead of solving.
    seed: int, default 0
        the seed forwarded to random generators.
    config: str, default None
        a Python configuration file defining '_runs'.
    name: str, default None
        the run to load from the configuration file.
    mode: str, default 'solve'
        'solve' or 'interpolate'.
    quad: str, default unit square
        the quad used by dump_tables, 'x1,y1,...,x4,y4'.
    builder: str, default 'explicit'
        the local basis builder.
    n_jobs: int, default 1
        the number of joblib workers.

    Returns
    -------
    path: str
        the main generated file.
    """
    params = dict(degree=degree, segments=segments, levels=levels,
                  mesh=mesh, generate=generate, problem=problem,
                  weak_form=weak_form, seed=seed, mode=mode,
                  builder=builder, n_jobs=n_jobs)
    try:
        if dump_tables:
            return _dump_tables(degree or 5, out, quad=quad)
        if save_mesh:
            return generate_mesh(generate or "unstructured", out, seed=seed)
        if config is not None:
            if name is None:
                raise ValueError("A run name is required with a config file.")
            run = ConfigParser(name, config).run_config(**params)
        else:
            run = RunConfig(**dict(
                (key, val) for key, val in params.items() if val is not None))
        return run_convergence(run, out)
    except (ValueError, AssertionError, np.linalg.LinAlgError) as err:
        print_error(f"{err.__class__.__name__}: {err}")
        raise SystemExit(1)
