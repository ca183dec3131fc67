import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "alphasqg._lattice_cy",
                ["src/alphasqg/_lattice_cy.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python fallback backend is always available; the extension is an
    # optional accelerator.
    ext_modules = []

setup(ext_modules=ext_modules)
