"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension; _kernels falls back
to the numpy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

extensions = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "blockforge._kernels._core",
        sources=["src/blockforge/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        optional=True,
    )
    extensions = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=extensions)
