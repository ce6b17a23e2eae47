"""Builds the optional compiled kernels; the package still installs without them."""

import os

from setuptools import setup


def extensions():
    if os.environ.get("GSCSP_NO_EXTENSION"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "gscsp._kernels",
        ["src/gscsp/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=extensions())
