"""Optional compiled kernel build.

The package is pure Python; if Cython is available at build time we also
compile the term-multiplication kernel.  Installs without Cython fall back
to the pure implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("jetcartan._kernel_c", ["src/jetcartan/_kernel_c.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
