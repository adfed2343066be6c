# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Define the mesh generation workflow and the per-level mesh sequences.
"""

# Imports
import os
import ast
import inspect
from c1quad.quad_mesh import load_mesh, save_mesh, refine_regular
from c1quad.mesh_generators import GENERATORS, NON_NESTED, generate
from c1quad.color_utils import print_title, print_text, print_result


def _literal(value):
    try:
        return ast.literal_eval(value)
    except (ValueError, SyntaxError):
        return value


def parse_generator(text):
    """ Parse a generator string.

    Parameters
    ----------
    text: str
        'name', 'name:key=value,...' or 'name:value,...' with values in
        the generator signature order.

    Returns
    -------
    name: str
        the generator name.
    params: dict
        the generator parameters.
    """
    name, _, args = str(text).partition(":")
    name = name.strip()
    if name not in GENERATORS:
        raise ValueError(
            f"Unknown mesh generator '{name}'. Available generators: "
            f"{', '.join(sorted(GENERATORS))}.")
    params = {}
    positional = list(inspect.signature(GENERATORS[name]).parameters)
    for idx, item in enumerate(filter(None, args.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            if idx >= len(positional):
                raise ValueError(
                    f"Too many parameters for mesh generator '{name}'.")
            key, value = positional[idx], key
        params[key.strip()] = _literal(value.strip())
    return name, params


def _forward_seed(name, params, seed):
    accepted = inspect.signature(GENERATORS[name]).parameters
    if seed is not None and "seed" not in params and "seed" in accepted:
        params["seed"] = seed


def mesh_sequence(levels, mesh=None, generator=None, seed=None):
    """ Yield the meshes of refinement levels 0..levels.

    Meshes from a file or a nested generator are refined regularly;
    non-nested generators are rebuilt at each level.

    Parameters
    ----------
    levels: int
        the finest level.
    mesh: str, default None
        a mesh JSON file.
    generator: str, default None
        a generator string, see parse_generator.
    seed: int, default None
        a seed forwarded to the generators that accept one.

    Returns
    -------
    meshes: generator of QuadMesh
        the level meshes.
    """
    if mesh is not None:
        current = load_mesh(mesh)
    else:
        name, params = parse_generator(generator)
        _forward_seed(name, params, seed)
        if name in NON_NESTED:
            base_level = params.pop("level", 0)
            for level in range(levels + 1):
                yield generate(name, level=base_level + level, **params)
            return
        current = generate(name, **params)
    for level in range(levels + 1):
        if level > 0:
            current = refine_regular(current)
        yield current


def generate_mesh(name, outdir, seed=None):
    """ Generate a built-in mesh and save it as JSON.

    Parameters
    ----------
    name: str
        the generator string, e.g. 'trapezoid:level=1'.
    outdir: str
        the destination folder.
    seed: int, default None
        a seed forwarded to the generators that accept one.

    Returns
    -------
    path: str
        the generated mesh file.
    """
    print_title(f"GENERATE MESH: {name}")
    generator, params = parse_generator(name)
    _forward_seed(generator, params, seed)
    mesh = generate(generator, **params)
    print_text(f"mesh: {mesh}")
    if not os.path.isdir(outdir):
        os.makedirs(outdir)
    path = save_mesh(mesh, os.path.join(outdir, f"mesh_{generator}.json"))
    print_result(f"mesh: {path}")
    return path
