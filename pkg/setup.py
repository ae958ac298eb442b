"""Builds the optional compiled kernel extension.

The package is fully functional without it: perimetric.kernels falls back
to the pure-Python implementation when the extension is absent. Set
PERIMETRIC_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PERIMETRIC_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("perimetric._kernels", ["src/perimetric/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
