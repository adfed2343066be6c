# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

# Imports
import os
import json
import tempfile
import unittest
import numpy as np
import pandas as pd
from c1quad.config import RunConfig, ConfigParser
from c1quad.quad_mesh import load_mesh
from c1quad.workflow import (
    run_convergence, convergence_table, dump_tables, generate_mesh,
    mesh_sequence, parse_generator, main)
from c1quad.workflow.convergence import COLUMNS
from c1quad.workflow.tables import parse_quad


CONFIG = """
_runs = {
    "quartic": {
        "degree": 4,
        "levels": 1,
        "generate": "unit-square-grid",
        "mode": "interpolate"},
    "broken": {
        "degree": 2}}
"""


class TestRunConfig(unittest.TestCase):
    """ Test the run configuration.
    """
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.configfile = os.path.join(self.tmpdir.name, "config.py")
        with open(self.configfile, "wt") as open_file:
            open_file.write(CONFIG)

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.degree, 5)
        self.assertEqual(config.segments, 1)
        self.assertEqual(config.generate, "unstructured")
        self.assertEqual(RunConfig(degree=3).segments, 3)
        self.assertEqual(RunConfig(degree=4, segments=3).segments, 3)
        self.assertIsNone(RunConfig(mesh="mesh.json").generate)

    def test_invalid(self):
        for params in ({"degree": 2}, {"degree": 3, "segments": 2},
                       {"levels": 9}, {"levels": -1},
                       {"weak_form": "gradient"}, {"mode": "plot"},
                       {"generate": None}, {"colour": "red"}):
            with self.assertRaises(ValueError):
                RunConfig(**params)

    def test_parser(self):
        parser = ConfigParser("quartic", self.configfile)
        config = parser.run_config()
        self.assertEqual(config.degree, 4)
        self.assertEqual(config.segments, 2)
        self.assertEqual(config.mode, "interpolate")
        config = parser.run_config(levels=0, problem=None)
        self.assertEqual(config.levels, 0)
        self.assertEqual(config.problem, "cos-sin")
        config = parser.run_config(mesh="mesh.json")
        self.assertIsNone(config.generate)
        with self.assertRaises(ValueError):
            ConfigParser("missing", self.configfile)
        with self.assertRaises(ValueError):
            ConfigParser("broken", self.configfile).run_config()

    def test_auto_params(self):
        params = ConfigParser.set_auto_params(
            {"segments": "auto", "degree": 5}, {"segments": 1})
        self.assertEqual(params, {"segments": 1, "degree": 5})
        with self.assertRaises(ValueError):
            ConfigParser.set_auto_params({"degree": "auto"}, {})


class TestMeshes(unittest.TestCase):
    """ Test the mesh sequences.
    """
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_parse_generator(self):
        self.assertEqual(parse_generator("unstructured"), ("unstructured", {}))
        self.assertEqual(parse_generator("trapezoid:level=1"),
                         ("trapezoid", {"level": 1}))
        self.assertEqual(parse_generator("perturbed-grid:4,0.1"),
                         ("perturbed-grid", {"n": 4, "magnitude": 0.1}))
        with self.assertRaises(ValueError):
            parse_generator("circle:3")
        with self.assertRaises(ValueError):
            parse_generator("l-shape:1")

    def test_nested(self):
        meshes = list(mesh_sequence(2, generator="l-shape"))
        self.assertEqual([mesh.n_quads for mesh in meshes], [3, 12, 48])

    def test_non_nested(self):
        meshes = list(mesh_sequence(2, generator="trapezoid:level=1"))
        self.assertEqual([mesh.n_quads for mesh in meshes], [16, 64, 256])

    def test_seed(self):
        first = next(mesh_sequence(0, generator="perturbed-grid", seed=3))
        second = next(mesh_sequence(0, generator="perturbed-grid:seed=3"))
        np.testing.assert_array_equal(first.vertices, second.vertices)

    def test_generate_mesh(self):
        path = generate_mesh("extraordinary-vertex:valence=6",
                             self.tmpdir.name)
        self.assertTrue(path.endswith("mesh_extraordinary-vertex.json"))
        mesh = load_mesh(path)
        self.assertEqual(mesh.n_quads, 6)
        meshes = list(mesh_sequence(1, mesh=path))
        self.assertEqual(meshes[1].n_quads, 24)


class TestTables(unittest.TestCase):
    """ Test the coefficient table dump.
    """
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_parse_quad(self):
        np.testing.assert_allclose(parse_quad("0,0,2,0,3,2,0,1"),
                                   [[0, 0], [2, 0], [3, 2], [0, 1]])
        with self.assertRaises(ValueError):
            parse_quad("0,0,1,0,1,1")

    def test_dump(self):
        path = dump_tables(5, self.tmpdir.name)
        frame = pd.read_csv(path)
        self.assertEqual(len(frame), 32 * 6)
        self.assertEqual(list(frame.columns[-6:]),
                         [f"d{idx}" for idx in range(6)])
        edge = frame[frame["function"] == 24]
        self.assertTrue((edge["kind"] == "EdgeNormal").all())
        # display row 4 is the xi2 index 1
        np.testing.assert_allclose(
            edge[edge["row"] == 4][["d2", "d3"]].values, [[8 / 25, 8 / 25]])
        self.assertAlmostEqual(
            np.abs(edge[[f"d{idx}" for idx in range(6)]].values).sum(),
            16 / 25)


class TestConvergence(unittest.TestCase):
    """ Test the convergence study.
    """
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_single_level(self):
        config = RunConfig(degree=5, levels=0, generate="unit-square-grid",
                           mode="interpolate")
        frame = convergence_table(config, verbose=False)
        self.assertEqual(list(frame.columns), COLUMNS)
        self.assertEqual(len(frame), 1)
        self.assertTrue(frame[["rate_linf", "rate_l2"]].isna().all(
            axis=None))
        self.assertEqual(frame["ndof"].iloc[0], 32)

    def test_holed_square(self):
        config = RunConfig(degree=4, levels=1, generate="holed-square",
                           mode="interpolate")
        frame = convergence_table(config, verbose=False)
        self.assertEqual(len(frame), 2)
        errors = frame[["err_linf", "err_l2_rel", "err_h1_rel",
                        "err_h2_rel"]].values
        self.assertTrue(np.all(errors[1] < errors[0]))
        self.assertTrue((frame[["rate_l2", "rate_h2"]].iloc[1] > 0).all())

    def test_run(self):
        config = RunConfig(degree=4, levels=1, generate="unit-square-grid:2",
                           problem="sin-cos")
        path = run_convergence(config, self.tmpdir.name)
        frame = pd.read_csv(path)
        self.assertEqual(list(frame.columns), COLUMNS)
        self.assertEqual(len(frame), 2)
        self.assertLess(frame["err_l2_rel"].iloc[1],
                        frame["err_l2_rel"].iloc[0])
        self.assertTrue(os.path.isfile(
            os.path.join(self.tmpdir.name, "convergence.gp")))
        with open(os.path.join(self.tmpdir.name, "metadata.json")) as of:
            metadata = json.load(of)
        self.assertEqual(metadata["degree"], 4)
        self.assertIn("rate_l2", metadata["final_rates"])

    def test_cli(self):
        outdir = os.path.join(self.tmpdir.name, "cli")
        path = main(degree=3, dump_tables=True, out=outdir)
        self.assertTrue(os.path.isfile(path))
        path = main(save_mesh=True, generate="l-shape", out=outdir)
        self.assertEqual(load_mesh(path).n_quads, 3)
        path = main(degree=5, levels=0, generate="unit-square-grid",
                    mode="interpolate", out=outdir)
        self.assertEqual(len(pd.read_csv(path)), 1)
        with self.assertRaises(SystemExit):
            main(degree=2, out=outdir)
        with self.assertRaises(SystemExit):
            main(degree=3, segments=2, out=outdir)
        with self.assertRaises(SystemExit):
            main(config=os.path.join(self.tmpdir.name, "config.py"),
                 out=outdir)


if __name__ == "__main__":
    unittest.main()
