"""Build shim for the optional compiled kernel.

The package is pure Python plus one Cython extension; without Cython the
install still works and the kernels module falls back to the reference
implementation.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(["src/knotconcord/_inertia.pyx"],
                            language_level=3)

setup(ext_modules=ext_modules)
