import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LAFT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("laft._kernels", ["src/laft/_kernels.pyx"], libraries=["gmp"], optional=True)],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
