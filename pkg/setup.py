import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are optional: the package falls back to the pure-Python
# backend at import time when the extension is absent. Set CATBASE_PURE_BUILD=1
# to skip compilation entirely.
extensions = []
if cythonize is not None and not os.environ.get("CATBASE_PURE_BUILD"):
    extensions = cythonize(
        [Extension("catbase._kernels._speed", ["src/catbase/_kernels/_speed.pyx"])],
        language_level=3,
    )

setup(ext_modules=extensions)
