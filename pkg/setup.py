from setuptools import Extension, setup
from Cython.Build import cythonize

ext_modules = [
    Extension(
        "arqsched._kernel",
        ["src/arqsched/_kernel.pyx"],
        extra_compile_args=["-O3"],
    ),
]

setup(ext_modules=cythonize(ext_modules, language_level="3"))
