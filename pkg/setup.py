"""Build script: compiles the GF(q) polynomial kernels when Cython and a C
compiler are available; the package installs fine without them (the pure
Python kernels are selected at import time)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/padic_deform/_gfpoly.pyx"],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"padic-deform: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
