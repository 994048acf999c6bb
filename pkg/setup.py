"""Build hook for the optional compiled kernels.

Metadata lives in pyproject.toml.  When Cython or a compiler is missing the
package still installs and runs on the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("holodiff.arith._ckernels", ["src/holodiff/arith/_ckernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
