#!/usr/bin/env python

"""The setup script."""

import io
from os import path as op
from setuptools import setup, find_packages

here = op.abspath(op.dirname(__file__))

with io.open(op.join(here, "README.md"), encoding="utf-8") as readme_file:
    readme = readme_file.read()

# get the dependencies and installs
with io.open(op.join(here, "requirements.txt"), encoding="utf-8") as f:
    all_reqs = f.read().split("\n")

install_requires = [
    x.strip() for x in all_reqs if x.strip() and not x.startswith("#")
]

setup_requirements = [
    "pytest-runner",
]

test_requirements = [
    "pytest>=3",
]

setup(
    author="noiselab contributors",
    python_requires=">=3.9",
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    description="Correlated Pauli noise on small quantum circuits: simulation, statistics and entanglement checks",
    entry_points={
        "console_scripts": [
            "noiselab=noiselab.runner.cli_runner:main",
        ],
    },
    install_requires=install_requires,
    license="BSD license",
    long_description=readme,
    long_description_content_type="text/markdown",
    include_package_data=True,
    keywords="noiselab",
    name="noiselab",
    packages=find_packages(include=["noiselab", "noiselab.*"]),
    setup_requires=setup_requirements,
    test_suite="tests",
    tests_require=test_requirements,
    version="0.1.0",
    zip_safe=False,
)
