"""Build the optional Cython kernels; the package falls back to numpy without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("TAILSMITH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        import numpy
    except ImportError:
        pass
    else:
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "tailsmith._kernels",
                    sources=["src/tailsmith/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3", "-fno-trapping-math"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
