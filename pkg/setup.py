import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "qbm_sbs.kernels._core",
                ["src/qbm_sbs/kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python install still works; the numpy fallback kernel is used.
    extensions = []

setup(ext_modules=extensions)
