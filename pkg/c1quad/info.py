# -*- coding: utf-8 -*-
##########################################################################
# NSAp - Copyright (C) CEA, 2023
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

# Module current version
version_major = 0
version_minor = 1
version_micro = 0

# Expected by setup.py: string of form "X.Y.Z"
__version__ = "{0}.{1}.{2}".format(version_major, version_minor, version_micro)

# Expected by setup.py: the status of the project
CLASSIFIERS = ["Development Status :: 4 - Beta",
               "Environment :: Console",
               "Operating System :: OS Independent",
               "Programming Language :: Python",
               "Topic :: Scientific/Engineering :: Mathematics",
               "Topic :: Utilities"]

# Project descriptions
description = """
C1 quadrilateral finite elements for fourth order problems.
"""
SUMMARY = """
.. container:: summary-carousel

    Smooth finite element spaces over unstructured quadrilateral meshes are
    needed to discretize fourth order problems such as the biharmonic
    equation with a plain Galerkin method. This package builds the local
    C1 quadrilateral elements of degree 3, 4 and 5 (polynomial for degree 5,
    spline macro-elements below), assembles the global C1 space with its
    vertex, edge and face degrees of freedom, and provides the projector,
    the biharmonic solver and the convergence study tooling.
"""
long_description = (
    "C1 quadrilateral finite elements for fourth order problems.\n")

# Main setup parameters
NAME = "c1quad"
ORGANISATION = "CEA"
MAINTAINER = "Antoine Grigis"
MAINTAINER_EMAIL = "antoine.grigis@cea.fr"
DESCRIPTION = description
LONG_DESCRIPTION = long_description
EXTRANAME = "NeuroSpin webPage"
EXTRAURL = (
    "https://joliot.cea.fr/drf/joliot/Pages/Entites_de_recherche/"
    "NeuroSpin.aspx")
LINKS = {"projects": "https://github.com/neurospin-projects"}
URL = "https://github.com/neurospin-projects/c1quad"
DOWNLOAD_URL = "https://github.com/neurospin-projects/c1quad"
LICENSE = "CeCILL-B"
AUTHOR = """
c1quad developers
"""
AUTHOR_EMAIL = "antoine.grigis@cea.fr"
PLATFORMS = "OS Independent"
ISRELEASE = True
VERSION = __version__
PROVIDES = ["c1quad"]
REQUIRES = [
    "numpy",
    "pandas",
    "scipy",
    "tqdm",
    "joblib",
    "fire"
]
SCRIPTS = [
    "c1quad/scripts/c1quad"
]
