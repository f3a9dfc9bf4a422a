"""Build script for the optional compiled Monte Carlo kernel.

The package works without the extension: rfvlc.montecarlo falls back to a
numpy implementation that draws the identical random stream.  The extension
links against numpy's static npyrandom library for direct bit-generator
access.
"""
import os

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    numpy = None
    cythonize = None


def extensions():
    if numpy is None or cythonize is None:
        return []
    ext = Extension(
        "rfvlc._mc_cython",
        ["src/rfvlc/_mc_cython.pyx"],
        include_dirs=[numpy.get_include()],
        library_dirs=[os.path.join(os.path.dirname(numpy.random.__file__), "lib")],
        libraries=["npyrandom"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        optional=True,  # install proceeds on build failure; numpy backend takes over
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
