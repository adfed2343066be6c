# -*- coding: utf-8 -*
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Configuration parser and run configuration.
"""

# Imports
import copy
from types import SimpleNamespace
from .bs_element import default_segments
from .biharmonic import WEAK_FORMS


MAX_LEVELS = 8
MODES = ("solve", "interpolate")
DEFAULT_RUN = {
    "degree": 5,
    "segments": "auto",
    "levels": 3,
    "mesh": None,
    "generate": "unstructured",
    "problem": "cos-sin",
    "weak_form": "laplacian",
    "mode": "solve",
    "seed": 0,
    "builder": "explicit",
    "n_jobs": 1}


class RunConfig(object):
    """ Parameters of a convergence study.

    Parameters
    ----------
    degree: int
        the degree p >= 3.
    segments: int or 'auto'
        the number of segments k >= max(1, 6 - p), 'auto' for max(1, 6 - p).
    levels: int
        the finest refinement level L_max in [0, 8].
    mesh: str
        a mesh JSON file, exclusive with generate.
    generate: str
        a built-in generator 'name' or 'name:key=value,...'.
    problem: str
        the manufactured solution name.
    weak_form: str
        'laplacian' or 'hessian'.
    mode: str
        'solve' for the Galerkin solve, 'interpolate' for the projector.
    seed: int
        the seed forwarded to random generators.
    builder: str
        the local basis builder, 'explicit' or 'numeric'.
    n_jobs: int
        the number of joblib workers.
    """
    def __init__(self, **params):
        unknown = set(params) - set(DEFAULT_RUN)
        if len(unknown) > 0:
            raise ValueError(
                f"Unknown run parameters: {', '.join(sorted(unknown))}.")
        params = dict(DEFAULT_RUN, **params)
        if params["mesh"] is not None:
            params["generate"] = None
        params = ConfigParser.set_auto_params(
            params, {"segments": default_segments(int(params["degree"]))})
        for key, val in params.items():
            setattr(self, key, val)
        self.validate()

    def __repr__(self):
        return "RunConfig({0})".format(", ".join(
            f"{key}={val!r}" for key, val in self.to_dict().items()))

    def to_dict(self):
        return dict((key, getattr(self, key)) for key in DEFAULT_RUN)

    def validate(self):
        """ Check the run invariants.

        Raises
        ------
        ValueError
            on an invalid parameter.
        """
        if int(self.degree) < 3:
            raise ValueError(f"Degree must be >= 3, got {self.degree}.")
        if int(self.segments) < default_segments(int(self.degree)):
            raise ValueError(
                f"Degree {self.degree} requires at least "
                f"{default_segments(int(self.degree))} segments, got "
                f"{self.segments}.")
        if not 0 <= int(self.levels) <= MAX_LEVELS:
            raise ValueError(
                f"Levels must be in [0, {MAX_LEVELS}], got {self.levels}.")
        if (self.mesh is None) == (self.generate is None):
            raise ValueError("Provide exactly one of mesh or generate.")
        if self.weak_form not in WEAK_FORMS:
            raise ValueError(f"Unknown weak form '{self.weak_form}'.")
        if self.mode not in MODES:
            raise ValueError(f"Unknown mode '{self.mode}'.")
        self.degree = int(self.degree)
        self.segments = int(self.segments)
        self.levels = int(self.levels)


class ConfigParser(object):
    """ Load the specified run configuration.

    The configuration file is a Python file defining a '_runs' dictionary
    that maps run names to dictionaries of RunConfig parameters.
    """
    def __init__(self, name, configfile):
        """ Init class.

        Parameters
        ----------
        name: str
            the name of the run to be loaded.
        configfile: str
            the path to the config file to be loaded.
        """
        self.name = name
        self.configfile = configfile
        config = {}
        with open(self.configfile) as open_file:
            exec(open_file.read(), config)
        if "_runs" not in config:
            raise ValueError(
                f"Config file {configfile} must define a '_runs' dictionary.")
        self.config = SimpleNamespace(runs=config["_runs"])
        if name not in self.config.runs:
            raise ValueError(
                f"Unknown run '{name}' in {configfile}: expect one of "
                f"{', '.join(sorted(self.config.runs))}.")

    @staticmethod
    def set_auto_params(params, default_params):
        """ Set automatically the 'auto' parameters.

        Parameters
        ----------
        params: dict
            the input parameters.
        default_parameters: dict
            the default parameters.

        Returns
        -------
        params: dict
            the filled parameters.
        """
        params = copy.deepcopy(params)
        for name, val in params.items():
            if val != "auto":
                continue
            if name not in default_params:
                raise ValueError(
                    f"Impossible to set default parameter '{name}'")
            params[name] = default_params[name]
        return params

    def run_config(self, **overrides):
        """ Build the RunConfig of the loaded run, command-line values
        taking precedence.
        """
        params = copy.deepcopy(self.config.runs[self.name])
        params.update(dict(
            (key, val) for key, val in overrides.items() if val is not None))
        if overrides.get("mesh") is not None:
            params["generate"] = None
        return RunConfig(**params)
