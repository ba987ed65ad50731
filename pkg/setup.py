from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension("dualmeet._fastscore", ["src/dualmeet/_fastscore.pyx"]),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
