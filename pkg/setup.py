"""Build the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and the
pure numpy kernels in ``ldinterp._kernels_py`` are used instead.
"""
import warnings

import numpy as np
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            warnings.warn(f"compiled kernels not built ({exc}); using numpy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"building {ext.name} failed ({exc}); using numpy fallback")


try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ldinterp._kernels",
                ["src/ldinterp/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # reassociation lets the weighted-abs reduction vectorize
                extra_compile_args=["-O3", "-fno-math-errno", "-fno-trapping-math", "-fassociative-math",
                                    "-fno-signed-zeros"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
