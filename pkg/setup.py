"""Build script for the optional compiled term-map kernels.

The package is pure Python except for hfib._kernels_c, a Cython build of
the inner polynomial loops.  The extension is marked optional: if no
compiler (or no Cython) is available the install still succeeds and the
package falls back to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hfib._kernels_c",
                ["src/hfib/_kernels_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
