"""Builds the optional Cython kernel for character n-gram hashing.

The package works without the extension (a pure-Python fallback is
selected at import time), so a failed extension build is not fatal when
installing from source without a compiler.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "scicorpus.kernels._chargrams",
                ["src/scicorpus/kernels/_chargrams.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
