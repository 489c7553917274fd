"""Build script for the optional compiled Smith normal form kernel.

The package is pure Python except for normone._snf_core, a Cython
translation of normone._snf_py used to speed up the elimination loops.
If Cython or a C compiler is unavailable the extension is skipped and
the package falls back to the pure implementation at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension (with a warning) when compilation fails."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            self._warn(exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            self._warn(exc)

    def _warn(self, exc):
        sys.stderr.write(
            "warning: building normone._snf_core failed (%s); "
            "falling back to the pure Python kernel\n" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write(
            "warning: Cython not available; skipping normone._snf_core\n"
        )
        return []
    return cythonize(
        [Extension("normone._snf_core", ["src/normone/_snf_core.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
