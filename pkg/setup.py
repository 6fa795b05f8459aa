from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "srskit._kernels._ccore",
                sources=["src/srskit/_kernels/_ccore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python kernels remain available; the compiled fast path is optional.
    ext_modules = []

setup(ext_modules=ext_modules)
