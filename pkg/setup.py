import os

import numpy as np
from setuptools import Extension, setup

# Set COHERENT_QHE_NO_EXT=1 to install the pure-Python fallback only.
ext_modules = []
if not os.environ.get("COHERENT_QHE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "coherent_qhe._kernels",
                    ["src/coherent_qhe/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
