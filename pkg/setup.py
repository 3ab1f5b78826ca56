import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# numpy implementation when the extension is missing. -ffp-contract=off
# keeps the compiled float arithmetic identical to the pure backend
# (no fused multiply-add), which the backend-parity tests rely on.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "conemoea._kernels._speed",
                ["src/conemoea/_kernels/_speed.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
