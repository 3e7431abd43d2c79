"""Build script for the optional compiled census kernel.

The package works without the extension (a vectorized numpy fallback is
selected at import time); the extension is marked optional so that a
missing C toolchain degrades gracefully instead of failing the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build-time only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fcensus._censuskernel",
                ["src/fcensus/_censuskernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
