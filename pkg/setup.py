#!/usr/bin/env python

# Always prefer setuptools over distutils
from setuptools import setup, find_packages
import codecs
import os.path


# to access version
def read(rel_path):
    here = os.path.abspath(os.path.dirname(__file__))
    with codecs.open(os.path.join(here, rel_path), "r") as fp:
        return fp.read()


def get_version(rel_path):
    for line in read(rel_path).splitlines():
        if line.startswith("__version__"):
            delim = '"' if '"' in line else "'"
            return line.split(delim)[1]
    else:
        raise RuntimeError("Unable to find version string.")


repo_name = "BQCURV"
analysis = "biquotient"

long_description = (
    "This package classifies Eschenburg spaces, Bazaikin spaces and torus "
    "quotients of S3 x S3 by the curvature of their Cheeger deformed metrics, "
    "and verifies the zero-curvature loci numerically."
)

setup(
    name=repo_name,
    version=get_version(os.path.join(analysis, "__init__.py")),
    description="Curvature classification of " + analysis.lower() + " manifolds",
    long_description=long_description,
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="biquotient curvature Cheeger deformation Eschenburg Bazaikin",
    packages=find_packages(exclude=["docs"]),
    install_requires=[
        "pandas>=1.0.3",
        "numpy>=1.18.4",
        "scipy>=1.4.1",
    ],
    extras_require={
        "test": ["hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": ["biquotient=biquotient.cli:main"],
    },
)
