"""Build script: compiles the optional elimination-kernel extension.

The package is fully functional without the extension (a pure-Python twin
is selected at import time), so any failure here downgrades to a plain
build instead of aborting the install.
"""

from setuptools import setup


def extension_modules():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    try:
        return cythonize(
            [Extension("upic._kernels", ["src/upic/_kernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": 3},
        )
    except Exception:
        return []


setup(ext_modules=extension_modules())
