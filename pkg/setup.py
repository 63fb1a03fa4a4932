"""Builds the optional Cython CRF kernels.

If Cython or a C compiler is unavailable the package still installs and
``jointseg.crf.backend`` falls back to the numpy implementation.
"""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "jointseg.crf._ckernels",
                ["src/jointseg/crf/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
