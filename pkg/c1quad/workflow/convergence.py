# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Define the convergence study workflow.
"""

# Imports
import os
import json
import numpy as np
import pandas as pd
from tqdm import tqdm
from c1quad.info import __version__
from c1quad.quad_mesh import geometry_report
from c1quad.global_space import GlobalSpace, expected_dimension
from c1quad.functions import get_problem
from c1quad.interpolation import interpolation_errors
from c1quad.biharmonic import ProblemSpec, solve_problem, error_norms
from c1quad.stat_utils import convergence_rates
from c1quad.workflow.meshes import mesh_sequence
from c1quad.color_utils import (
    print_title, print_subtitle, print_text, print_result)


ERROR_COLUMNS = ["err_linf", "err_l2_rel", "err_h1_rel", "err_h2_rel"]
RATE_COLUMNS = ["rate_linf", "rate_l2", "rate_h1", "rate_h2"]
COLUMNS = ["level", "h", "ndof"] + ERROR_COLUMNS + RATE_COLUMNS
GNUPLOT = """set terminal pngcairo size 800,600
set output "convergence.png"
set datafile separator ","
set logscale xy
set key autotitle columnhead
set xlabel "NDOF"
set ylabel "error"
set title "{title}"
plot for [col=4:7] "convergence.csv" using 3:col with linespoints
"""


def convergence_table(config, verbose=True):
    """ Compute the errors of a run on each refinement level.

    Parameters
    ----------
    config: RunConfig
        the run configuration.
    verbose: bool, default True
        display progress information.

    Returns
    -------
    frame: pandas.DataFrame
        one row per level with the columns level, h, ndof, the four errors
        and the four rates (empty on the first row).
    """
    solution = get_problem(config.problem)
    problem = ProblemSpec.from_solution(solution, weak_form=config.weak_form)
    records = []
    meshes = mesh_sequence(config.levels, mesh=config.mesh,
                           generator=config.generate, seed=config.seed)
    if verbose:
        meshes = tqdm(meshes, total=config.levels + 1, desc="levels")
    for level, mesh in enumerate(meshes):
        geometry = geometry_report(mesh)
        space = GlobalSpace(mesh, config.degree, config.segments,
                            builder=config.builder, n_jobs=config.n_jobs)
        assert space.dimension == expected_dimension(
            mesh, config.degree, config.segments), "dimension mismatch."
        if config.mode == "interpolate":
            _, errors = interpolation_errors(space, solution)
        else:
            coefficients, _ = solve_problem(space, problem,
                                            n_jobs=config.n_jobs)
            errors = error_norms(space, coefficients, solution)
        records.append({
            "level": level, "h": geometry.h, "ndof": space.dimension,
            "err_linf": errors.linf, "err_l2_rel": errors.l2_rel,
            "err_h1_rel": errors.h1_rel, "err_h2_rel": errors.h2_rel})
    frame = pd.DataFrame.from_records(records)
    rates = convergence_rates(frame[ERROR_COLUMNS])
    for err_name, rate_name in zip(ERROR_COLUMNS, RATE_COLUMNS):
        frame[rate_name] = rates[err_name].values
    return frame[COLUMNS]


def run_convergence(config, outdir):
    """ Run a convergence study and save its report.

    Parameters
    ----------
    config: RunConfig
        the run configuration.
    outdir: str
        the destination folder.

    Returns
    -------
    path: str
        the generated CSV report.

    Notes
    -----
    The destination folder receives 'convergence.csv', a gnuplot script
    'convergence.gp' plotting the errors against the number of degrees of
    freedom, and 'metadata.json' describing the run.
    """
    source = config.mesh or config.generate
    print_title(f"CONVERGENCE STUDY: p={config.degree}, {source}")
    print_text(f"configuration: {config}")
    if not os.path.isdir(outdir):
        os.makedirs(outdir)

    print_subtitle(f"Computing {config.mode} errors...")
    frame = convergence_table(config)
    with pd.option_context("display.width", 200):
        print(frame)

    print_subtitle("Saving results...")
    path = os.path.join(outdir, "convergence.csv")
    frame.to_csv(path, sep=",", index=False, float_format="%.16e")
    print_result(f"convergence: {path}")
    gnuplot = os.path.join(outdir, "convergence.gp")
    with open(gnuplot, "wt") as open_file:
        open_file.write(GNUPLOT.format(
            title=f"p={config.degree} {config.problem} ({config.mode})"))
    print_result(f"gnuplot script: {gnuplot}")
    metadata = dict(config.to_dict())
    metadata.update({
        "version": __version__,
        "quadrature": f"gauss-legendre {config.degree + 2}x"
                      f"{config.degree + 2} per polynomial piece",
        "linf_sampling": "10x10 per polynomial piece",
        "mesh_source": source,
        "final_rates": dict(
            (name, None if np.isnan(val) else float(val))
            for name, val in frame[RATE_COLUMNS].iloc[-1].items())})
    metafile = os.path.join(outdir, "metadata.json")
    with open(metafile, "wt") as open_file:
        json.dump(metadata, open_file, indent=4)
    print_result(f"metadata: {metafile}")
    return path
