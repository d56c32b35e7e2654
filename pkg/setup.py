"""Build script for the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and runs on
the pure-Python fallback.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cuspelastic._kernels._core", ["src/cuspelastic/_kernels/_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on the build host
    print(f"warning: compiled kernels disabled ({exc})")
    ext_modules = []

setup(ext_modules=ext_modules)
