# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Define the coefficient table dump workflow.
"""

# Imports
import os
import numpy as np
import pandas as pd
from c1quad.bs_element import build_basis_explicit
from c1quad.color_utils import (
    print_title, print_subtitle, print_text, print_result)


UNIT_SQUARE = "0,0,1,0,1,1,0,1"


def parse_quad(quad):
    """ Parse 'x1,y1,x2,y2,x3,y3,x4,y4' into (4, 2) corners.
    """
    if isinstance(quad, str):
        quad = quad.split(",")
    corners = np.asarray(quad, dtype=float)
    if corners.size != 8:
        raise ValueError(
            f"A quad needs 8 coordinates, got {corners.size}.")
    return corners.reshape(4, 2)


def tables_frame(basis):
    """ All coefficient tables of a local basis in display orientation.

    Returns
    -------
    frame: pandas.DataFrame
        one row per table row, labeled by the function index, its degree
        of freedom and the display row (top row first).
    """
    records = []
    size = basis.size
    for idx, label in enumerate(basis.labels):
        display = basis.table(idx).display()
        for row, values in enumerate(display):
            record = {"function": idx, "kind": label.kind,
                      "anchor": "" if label.anchor is None else label.anchor,
                      "index": str(label.index), "row": row}
            record.update(dict((f"d{col}", val)
                               for col, val in enumerate(values)))
            records.append(record)
    columns = (["function", "kind", "anchor", "index", "row"] +
               [f"d{col}" for col in range(size)])
    return pd.DataFrame.from_records(records, columns=columns)


def dump_tables(degree, outdir, quad=UNIT_SQUARE):
    """ Dump the closed-form coefficient tables of a quad as CSV.

    Parameters
    ----------
    degree: int
        the degree p in {3, 4, 5}.
    outdir: str
        the destination folder.
    quad: str or list, default unit square
        the quad vertices 'x1,y1,...,x4,y4' in counter-clockwise order.

    Returns
    -------
    path: str
        the generated CSV file.
    """
    print_title(f"DUMP COEFFICIENT TABLES: p={degree}")
    corners = parse_quad(quad)
    print_text(f"quad: {corners.tolist()}")

    print_subtitle("Building tables...")
    basis = build_basis_explicit(corners, int(degree))
    frame = tables_frame(basis)
    print_text(f"number of tables: {len(basis)}")

    if not os.path.isdir(outdir):
        os.makedirs(outdir)
    path = os.path.join(outdir, f"tables_p{degree}.csv")
    frame.to_csv(path, sep=",", index=False, float_format="%.17g")
    print_result(f"tables: {path}")
    return path
