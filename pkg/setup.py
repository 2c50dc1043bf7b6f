import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python fallback kernel is used when the extension is absent.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "spingate._rk4",
                ["src/spingate/_rk4.pyx"],
                include_dirs=[numpy.get_include()],
                # -fcx-limited-range keeps complex multiplies inline instead
                # of __muldc3 calls; finite-value arithmetic is unchanged.
                extra_compile_args=["-O3", "-fcx-limited-range"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
