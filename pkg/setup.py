"""Builds the optional compiled kernels.

The package works without the extension: propnet._core falls back to the
pure-Python kernels when the compiled module is missing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "propnet._core._speedups",
                sources=["src/propnet/_core/_speedups.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
