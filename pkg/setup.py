"""Build script for the optional compiled search kernel.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); the extension makes the exhaustive
searches roughly one to two orders of magnitude faster.
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
                "idxloc._kernel._fastcore",
                ["src/idxloc/_kernel/_fastcore.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
