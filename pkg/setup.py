import os

from setuptools import setup, Extension

ext_modules = []
if os.environ.get("TLOG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("tlog._core", ["src/tlog/_core.pyx"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
