import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ctrwfractal._boxkernel",
                ["src/ctrwfractal/_boxkernel.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback is selected at import time, so the package
    # still works without the compiled kernel
    ext_modules = []

setup(ext_modules=ext_modules)
