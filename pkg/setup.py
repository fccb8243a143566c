"""Builds the optional compiled kernel extension.

The package is fully functional without it: corae._kernels falls back to the
pure-Python implementation when the extension is absent. Set CORAE_NO_NATIVE=1
to skip the build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CORAE_NO_NATIVE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "corae._kernels._native",
                    ["src/corae/_kernels/_native.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
