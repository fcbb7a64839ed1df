"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only prints a warning instead of aborting
the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "rotcheeger._kernels._fast",
                ["src/rotcheeger/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"warning: fast kernels not built ({exc}); using pure-Python backend\n")
    ext_modules = []

setup(ext_modules=ext_modules)
