"""Build the optional compiled enumeration kernel.

If Cython or a C compiler is missing the package still installs and falls
back to the pure-Python kernel.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("NCDT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("ncdt._ckernel", ["src/ncdt/_ckernel.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
