from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "minorforge._kernels._fast",
        ["src/minorforge/_kernels/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
