"""Builds the compiled kernel extension.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a failed build only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "onticlab.kernels._ckernels",
                ["src/onticlab/kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the C loops bit-compatible with the
                # numpy fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
