"""Build the optional Cython kernel module.

The extension is marked optional: if Cython or a C compiler is missing the
package installs with the pure-Python kernels only.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("nlmopt._ckernels", ["src/nlmopt/_ckernels.pyx"], optional=True)],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )

setup(ext_modules=ext_modules)
