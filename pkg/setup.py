"""Build the compiled phase-sum core when Cython and a C toolchain are present.

The package works without the extension: spinpair.backend falls back to the
pure numpy implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "spinpair._core",
                ["src/spinpair/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError as exc:  # pragma: no cover - build-environment dependent
    print(f"spinpair: building without compiled core ({exc})")

setup(ext_modules=ext_modules)
