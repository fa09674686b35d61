"""Build script: compiles the optional RK4 kernel extension.

The extension is marked optional; if Cython or a C compiler is missing the
install proceeds and saucer.kernels falls back to the pure-Python backend.
"""
from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "saucer._kernels",
                ["src/saucer/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
