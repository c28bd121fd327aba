import os

from setuptools import setup

ext_modules = []
if os.environ.get("SKEWINTERP_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(["src/skewinterp/_kernels.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
