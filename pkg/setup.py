import numpy
from setuptools import Extension, setup

# The compiled oracle kernels are optional: the package falls back to the
# pure-Python implementations in specgan.oracle.pykernels when the extension
# is unavailable (at a large speed penalty for mass labeling).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "specgan.oracle._kernels",
                sources=["src/specgan/oracle/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
