"""Build script: compiles the optional row-reduction kernel extension.

The package is pure Python plus one optional Cython extension holding the hot
kernels (exact row reduction and matrix multiply). If Cython or a C compiler
is unavailable the build falls back to the pure-Python twin and everything
still works; ratspec.kernels selects the backend at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension("ratspec._kernels", ["src/ratspec/_kernels.pyx"])
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """Never fail the install over the optional speedup."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc})", file=sys.stderr)


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})
