import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

compile_args = ["-O3"]
if os.environ.get("QAPDELTA_NATIVE"):
    compile_args.append("-march=native")

ext_modules = []
if cythonize is not None and not os.environ.get("QAPDELTA_PURE_PYTHON"):
    ext = Extension(
        "qapdelta._kernels",
        ["src/qapdelta/_kernels.pyx"],
        extra_compile_args=compile_args,
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
