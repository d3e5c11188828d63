"""Build script: compiles the optional C kernel extension when Cython is present.

`pip install -e . --no-build-isolation` works with or without Cython; without
it the package falls back to the pure-Python kernels at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/semilaurent/_corekernels.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
