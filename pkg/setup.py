"""Build the optional compiled GF(2) kernel; the package falls back to pure
Python when the extension is absent."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HETDTB_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "hetdtb._gf2_kernel",
                    ["src/hetdtb/_gf2_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
