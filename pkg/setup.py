import os

from setuptools import setup

ext_modules = []
if os.environ.get("MINNORM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "minnorm._kernels",
                    ["src/minnorm/_kernels.pyx"],
                    libraries=["gmp"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; installing the pure-Python kernels only")

setup(ext_modules=ext_modules)
