"""Build script for the optional compiled kernels.

The package works without the extension (a pure numpy fallback is selected at
import time), but the Cython kernels make the transform hot paths much faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("rankmra._speedups", ["src/rankmra/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
