import os

from setuptools import Extension, setup

# The compiled skein kernel is optional: the package falls back to the
# pure-Python kernel when the extension is unavailable.
ext_modules = []
if os.environ.get("KNOTBOUNDS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("knotbounds._kernel", ["src/knotbounds/_kernel.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
