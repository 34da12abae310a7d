import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the compiled kernels when a toolchain is available.

    The package works without them (sensesearch.kernels falls back to the
    pure-Python implementations at import time), so a failed compile must
    not fail the install.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: skipping compiled kernels ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); pure-Python fallback will be used")


def extensions():
    if os.environ.get("SENSESEARCH_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "sensesearch._ckernels",
        sources=["src/sensesearch/_ckernels.pyx"],
        # -ffp-contract=off keeps float results bit-identical to the pure
        # Python kernels (no FMA contraction of a + b*c).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize(ext, language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
