"""Build script: compiles the optional Cython speedup extension.

The package is fully functional without the extension (a vectorized
numpy implementation of the same kernels is selected at import time),
so any failure here degrades to a pure-Python install instead of
aborting.  Set TORSIO_NO_EXT=1 to skip the extension on purpose.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if not os.environ.get("TORSIO_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "torsio._speedups",
                    ["src/torsio/_speedups.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError as exc:
        sys.stderr.write(
            "torsio: Cython/numpy unavailable (%s); building without the "
            "compiled kernels.\n" % exc
        )

setup(ext_modules=ext_modules)
